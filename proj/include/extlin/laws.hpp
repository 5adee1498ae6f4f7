#pragma once

#include "extlin/errors.hpp"
#include "extlin/rng.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace extlin::laws {

using json = nlohmann::json;

/// State of one generated case: its random stream, the serialized inputs recorded so far and
/// the failed checks.
class CaseContext {
public:
    CaseContext(std::uint64_t seed, std::size_t index) : rng(seed, index), index_(index) {}

    Rng rng;
    std::size_t index() const noexcept { return index_; }
    void record(const std::string& key, json value) { input_[key] = std::move(value); }
    /// Records a failed check; returns ok so checks can be chained.
    bool check(bool ok, const std::string& what);

    const json& input() const noexcept { return input_; }
    const std::vector<std::string>& failed() const noexcept { return failed_; }

private:
    std::size_t index_;
    json input_ = json::object();
    std::vector<std::string> failed_;
};

struct Suite {
    std::string name;
    std::string summary;
    std::function<void(CaseContext&)> run_case;
};

struct Failure {
    std::size_t case_index = 0;
    json input;
    std::string detail;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    std::vector<Failure> failures;
    double elapsed_ms = 0;
    bool passed() const { return failures.empty(); }
};

class UnknownSuite : public Error {
public:
    explicit UnknownSuite(const std::string& name);
};

const std::vector<Suite>& registered_suites();
std::vector<std::string> suite_names();
/// Runs cases 0..cases-1 concurrently; each case draws from Rng(seed, case index) and the
/// failures are listed in case order. Library errors inside a case count as failures.
Report run_suite(const std::string& name, std::uint64_t seed, std::size_t cases);
std::vector<Report> run_all(std::uint64_t seed, std::size_t cases);

/// {"suite", "seed", "cases", "failures": [{"case", "input", "detail"}], "elapsed_ms"}.
json to_json(const Report& r);
std::string render_text(const Report& r);

} // namespace extlin::laws
