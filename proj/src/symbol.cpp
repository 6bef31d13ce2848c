#include "qska/symbol.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace qska {
namespace {

struct Table {
    std::shared_mutex mu;
    std::vector<std::string> names;
    std::unordered_map<std::string, std::uint32_t> index;

    Table() {
        // Standard vocabulary, interned up front in a fixed order.  z is the
        // grid variable, s the symmetrized base (q = s^2), t the spectral
        // deformation (t = q^nu).  a..d are the grid parameters, e a free
        // auxiliary, ra..rd quartic roots of a..d.  The remaining names are
        // the coefficient families used by the operator catalog.
        static const char* core[] = {
            "s", "z", "t", "a", "b", "c", "d", "e",
            "ra", "rb", "rc", "rd",
            "alpha", "beta", "gamma", "delta", "eps", "zeta",
            "a00", "a01", "a10", "a11", "a12",
            "alpha1", "alpha2", "alpha3", "alpha4", "alpha5", "alpha6",
            "beta1", "beta2", "beta3",
        };
        for (const char* n : core) {
            index.emplace(n, static_cast<std::uint32_t>(names.size()));
            names.emplace_back(n);
        }
    }
};

Table& table() {
    static Table t;
    return t;
}

} // namespace

Sym Sym::intern(std::string_view name) {
    Table& t = table();
    {
        std::shared_lock lock(t.mu);
        auto it = t.index.find(std::string(name));
        if (it != t.index.end()) return Sym(it->second);
    }
    std::unique_lock lock(t.mu);
    auto [it, fresh] = t.index.emplace(std::string(name),
                                       static_cast<std::uint32_t>(t.names.size()));
    if (fresh) t.names.emplace_back(name);
    return Sym(it->second);
}

bool Sym::known(std::string_view name) {
    Table& t = table();
    std::shared_lock lock(t.mu);
    return t.index.count(std::string(name)) != 0;
}

const std::string& Sym::name() const {
    Table& t = table();
    std::shared_lock lock(t.mu);
    return t.names.at(id_);
}

} // namespace qska
