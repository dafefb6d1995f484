#pragma once

#include <optional>

#include "diamond/groupalg.hpp"
#include "diamond/matrices.hpp"

namespace diamond {
namespace checks {

struct CheckRecord {
    std::string slug;
    std::string params_hash;
    std::string subset;  // the J (or indices) the record is about
    bool pass = false;
    std::string lhs, rhs;
    std::string detail;
};

struct Config {
    int f_min = 1;
    int f_max = 2;
    int trials = 3;      // ParamSets per (f, J_rho)
    int op_trials = 50;  // randomized operator trials
    std::uint64_t seed = 1;
    int precision = 0;  // 0: per-policy
    Mode mode = Mode::strict;
    std::string mutate;  // "", "d", "r", "table-case", "s-sign", "coset"
    std::vector<i64> primes = {29, 31, 37};
    std::optional<ParamSet> params;          // explicit instance instead of sweeping
    std::optional<std::uint32_t> j_rho_bits; // restrict the J_rho sweep
    bool parallel = true;
};

// Stable identifiers, one per verified statement.
const std::vector<std::string>& all_slugs();
bool is_slug(const std::string& s);

std::vector<CheckRecord> run_slug(const std::string& slug, const Config& cfg);
std::vector<CheckRecord> run_all(const Config& cfg);

bool all_pass(const std::vector<CheckRecord>& recs);
void sort_records(std::vector<CheckRecord>& recs);

std::string report_json(const std::string& config_desc, const std::vector<CheckRecord>& recs);
std::string report_text(const std::vector<CheckRecord>& recs, bool verbose);

}  // namespace checks
}  // namespace diamond
