#include "rtr/vars.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace rtr {

namespace {

struct Registry {
    std::mutex mu;
    std::deque<std::string> names;
    std::vector<std::tuple<int, long, std::string>> keys;
    std::unordered_map<std::string, int> ids;
};

Registry& reg() {
    static Registry r;
    return r;
}

std::tuple<int, long, std::string> rank_key(const std::string& n) {
    if (n.size() > 1 && n[0] == 'z' &&
        std::all_of(n.begin() + 1, n.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return {0, std::stol(n.substr(1)), ""};
    if (n == "t") return {1, 0, ""};
    if (n == "x") return {2, 0, ""};
    if (n == "u") return {3, 0, ""};
    if (n == "Q") return {4, 0, ""};
    return {5, 0, n};
}

}  // namespace

int var_id(const std::string& name) {
    auto& r = reg();
    std::lock_guard<std::mutex> lk(r.mu);
    auto it = r.ids.find(name);
    if (it != r.ids.end()) return it->second;
    if ((int)r.names.size() >= kMaxVars)
        throw std::runtime_error("too many symbols (limit 23): " + name);
    int id = (int)r.names.size();
    r.names.push_back(name);
    r.keys.push_back(rank_key(name));
    r.ids[name] = id;
    return id;
}

const std::string& var_name(int id) {
    auto& r = reg();
    std::lock_guard<std::mutex> lk(r.mu);
    return r.names.at(id);
}

int var_count() {
    auto& r = reg();
    std::lock_guard<std::mutex> lk(r.mu);
    return (int)r.names.size();
}

int zvar(int i) { return var_id("z" + std::to_string(i)); }
int tvar() {
    static int id = var_id("t");
    return id;
}
int xvar() {
    static int id = var_id("x");
    return id;
}
int uvar() {
    static int id = var_id("u");
    return id;
}
int qvar() {
    static int id = var_id("Q");
    return id;
}

static std::tuple<int, long, std::string> key_of(int id) {
    auto& r = reg();
    std::lock_guard<std::mutex> lk(r.mu);
    return r.keys.at(id);
}

bool is_zvar(int id) { return std::get<0>(key_of(id)) == 0; }

int zindex(int id) {
    auto k = key_of(id);
    if (std::get<0>(k) != 0) return -1;
    return (int)std::get<1>(k);
}

bool var_before(int a, int b) {
    if (a == b) return false;
    return key_of(a) < key_of(b);
}

std::vector<int> canonical_var_order() {
    std::vector<int> v(var_count());
    for (int i = 0; i < (int)v.size(); ++i) v[i] = i;
    std::sort(v.begin(), v.end(), var_before);
    return v;
}

}  // namespace rtr
