#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace extlin {

/// Finite group given by its full multiplication table, validated on construction.
class FiniteGroup {
public:
    /// table[a * n + b] = a * b.
    FiniteGroup(std::vector<std::string> names, std::vector<std::size_t> table);

    static FiniteGroup trivial();
    static FiniteGroup cyclic(std::size_t n);
    /// Permutations of {0,1,2}; (s*t)(x) = s(t(x)).
    static FiniteGroup symmetric3();
    static FiniteGroup klein();
    static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);

    std::size_t order() const noexcept { return names_.size(); }
    const std::string& name(std::size_t g) const { return names_.at(g); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
    std::size_t identity() const noexcept { return identity_; }
    std::size_t inverse(std::size_t g) const { return inverse_.at(g); }
    std::optional<std::size_t> find(const std::string& name) const;
    const std::vector<std::size_t>& table() const noexcept { return table_; }

    bool is_subgroup(const std::vector<std::size_t>& elements) const;
    bool is_abelian() const;

private:
    std::vector<std::string> names_;
    std::vector<std::size_t> table_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> inverse_;
};

} // namespace extlin
