#include "extlin/group.hpp"

#include "extlin/errors.hpp"

#include <array>
#include <set>

namespace extlin {

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::size_t> table)
    : names_(std::move(names)), table_(std::move(table)) {
    const std::size_t n = names_.size();
    if (n == 0)
        throw ValidationError("group law: a group has at least one element");
    if (table_.size() != n * n)
        throw ValidationError("group law: table must be " + std::to_string(n) + "x" + std::to_string(n));
    if (std::set<std::string>(names_.begin(), names_.end()).size() != n)
        throw ValidationError("group law: element names must be distinct");
    for (std::size_t k = 0; k < table_.size(); ++k)
        if (table_[k] >= n)
            throw ValidationError("group law: product " + names_[k / n] + "*" + names_[k % n] +
                                  " is not an element");
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool unit = true;
        for (std::size_t g = 0; g < n && unit; ++g)
            unit = mul(e, g) == g && mul(g, e) == g;
        if (unit) {
            identity_ = e;
            found = true;
        }
    }
    if (!found)
        throw ValidationError("group law: no identity element");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw ValidationError("group law: associativity fails for (" + names_[a] + ", " +
                                          names_[b] + ", " + names_[c] + ")");
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                inverse_[a] = b;
                break;
            }
        if (inverse_[a] == n)
            throw ValidationError("group law: " + names_[a] + " has no inverse");
    }
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup({"e"}, {0}); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    std::vector<std::string> names;
    std::vector<std::size_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        names.push_back(std::to_string(a));
        for (std::size_t b = 0; b < n; ++b)
            table[a * n + b] = (a + b) % n;
    }
    return FiniteGroup(std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::symmetric3() {
    using Perm = std::array<std::size_t, 3>;
    const std::vector<Perm> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    const std::vector<std::string> names = {"e", "(01)", "(02)", "(12)", "(012)", "(021)"};
    std::vector<std::size_t> table(36);
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            Perm ab;
            for (std::size_t x = 0; x < 3; ++x)
                ab[x] = perms[a][perms[b][x]];
            for (std::size_t c = 0; c < 6; ++c)
                if (perms[c] == ab)
                    table[a * 6 + b] = c;
        }
    return FiniteGroup(names, std::move(table));
}

FiniteGroup FiniteGroup::klein() { return product(cyclic(2), cyclic(2)); }

FiniteGroup FiniteGroup::product(const FiniteGroup& g, const FiniteGroup& h) {
    const std::size_t m = g.order(), n = h.order();
    std::vector<std::string> names;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < n; ++b)
            names.push_back("(" + g.name(a) + "," + h.name(b) + ")");
    std::vector<std::size_t> table(m * n * m * n);
    for (std::size_t a1 = 0; a1 < m; ++a1)
        for (std::size_t b1 = 0; b1 < n; ++b1)
            for (std::size_t a2 = 0; a2 < m; ++a2)
                for (std::size_t b2 = 0; b2 < n; ++b2)
                    table[(a1 * n + b1) * m * n + a2 * n + b2] = g.mul(a1, a2) * n + h.mul(b1, b2);
    return FiniteGroup(std::move(names), std::move(table));
}

std::optional<std::size_t> FiniteGroup::find(const std::string& name) const {
    for (std::size_t g = 0; g < names_.size(); ++g)
        if (names_[g] == name)
            return g;
    return std::nullopt;
}

bool FiniteGroup::is_subgroup(const std::vector<std::size_t>& elements) const {
    std::set<std::size_t> s(elements.begin(), elements.end());
    if (!s.count(identity_))
        return false;
    for (auto a : s) {
        if (!s.count(inverse(a)))
            return false;
        for (auto b : s)
            if (!s.count(mul(a, b)))
                return false;
    }
    return true;
}

bool FiniteGroup::is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
        for (std::size_t b = 0; b < order(); ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

} // namespace extlin
