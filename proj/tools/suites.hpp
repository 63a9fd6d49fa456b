#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qrank/ring.hpp"

namespace qrank::cli {

enum class Verdict { pass, fail, inconclusive };
const char* verdict_name(Verdict v);

struct Claim {
    std::string claim;
    std::string instance;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    u64 seed = 0;
    Verdict verdict = Verdict::pass;
    std::string detail;  // what was checked, or the first failure
    std::string digest;  // hex digest of the certificate text
    std::string certificate;
};

struct SuiteOptions {
    u64 seed = 0;
    unsigned jobs = 1;
    u32 prime = kDefaultPrime;
    std::size_t lmax = 4;
    std::size_t kmax = 4;
    std::size_t samples = 20;
    std::vector<std::size_t> dims;  // for the splitting suite; empty means 2 off the root, 3 at it
};

std::string hex_digest(const std::string& s);

// Runs fn(i) for i < n on up to jobs threads; exceptions are rethrown after all threads join.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

// Suites: lemmas, tensor, splitting, mainthm, all.
const std::vector<std::string>& suite_names();
std::vector<Claim> run_suite(const std::string& suite, const RootedTree& t, const SuiteOptions& opt);

nlohmann::ordered_json to_json(const Claim& c);
// 0 when every verdict passes, 1 on any failure, otherwise 2.
int exit_code(const std::vector<Claim>& claims);

}  // namespace qrank::cli
