#include "extlin/faults.hpp"

#include <atomic>

namespace extlin::faults {

namespace {
std::atomic<Fault> current{Fault::none};
}

Fault active() noexcept { return current.load(std::memory_order_relaxed); }
void set_active(Fault f) noexcept { current.store(f, std::memory_order_relaxed); }

std::optional<Fault> parse(const std::string& name) {
    if (name == "none")
        return Fault::none;
    if (name == "koszul-sign")
        return Fault::koszul_sign;
    if (name == "transpose-transport")
        return Fault::transpose_transport;
    if (name == "corrupt-composition")
        return Fault::corrupt_composition;
    return std::nullopt;
}

std::string name(Fault f) {
    switch (f) {
    case Fault::none:
        return "none";
    case Fault::koszul_sign:
        return "koszul-sign";
    case Fault::transpose_transport:
        return "transpose-transport";
    case Fault::corrupt_composition:
        return "corrupt-composition";
    }
    return "none";
}

} // namespace extlin::faults
