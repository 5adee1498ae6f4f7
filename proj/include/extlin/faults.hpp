#pragma once

#include <optional>
#include <string>

namespace extlin::faults {

/// Deliberate defects used to check that the law suites notice broken code.
enum class Fault { none, koszul_sign, transpose_transport, corrupt_composition };

Fault active() noexcept;
void set_active(Fault f) noexcept;
std::optional<Fault> parse(const std::string& name);
std::string name(Fault f);

class Scoped {
public:
    explicit Scoped(Fault f) noexcept : previous_(active()) { set_active(f); }
    ~Scoped() { set_active(previous_); }
    Scoped(const Scoped&) = delete;
    Scoped& operator=(const Scoped&) = delete;

private:
    Fault previous_;
};

} // namespace extlin::faults
