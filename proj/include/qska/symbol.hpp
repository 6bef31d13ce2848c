#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qska {

// Interned symbol.  Comparison is by id, which equals interning order; the
// engine pre-interns its whole standard vocabulary in one fixed order (see
// symbol.cpp) so that term order — and therefore every canonical text form
// and golden file — is reproducible across runs.
class Sym {
public:
    Sym() : id_(UINT32_MAX) {}

    static Sym intern(std::string_view name);
    static bool known(std::string_view name);

    const std::string& name() const;
    std::uint32_t id() const { return id_; }
    bool valid() const { return id_ != UINT32_MAX; }

    friend bool operator==(Sym a, Sym b) { return a.id_ == b.id_; }
    friend bool operator!=(Sym a, Sym b) { return a.id_ != b.id_; }
    friend bool operator<(Sym a, Sym b) { return a.id_ < b.id_; }
    friend bool operator>(Sym a, Sym b) { return a.id_ > b.id_; }

private:
    explicit Sym(std::uint32_t id) : id_(id) {}
    std::uint32_t id_;
};

} // namespace qska
