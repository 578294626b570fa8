#pragma once

#include "deform/io.hpp"
#include "deform/models.hpp"
#include "deform/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace deform {

// Deterministic random instances shared by the seeded property and
// acceptance suites. Dimensions stay at or below 4 per degree and the
// nilpotency index at or below 4.
ArtinAlgebra::Ptr random_test_algebra(Rng& rng);
Dgla::Ptr random_test_dgla(const std::vector<CatalogEntry>& entries, Rng& rng);
DglaCochain random_test_cochain(const Dgla::Ptr& dgla, const ArtinAlgebra::Ptr& algebra,
                                int degree, Rng& rng, int density = 2);
McSolution random_test_mc(const Dgla::Ptr& dgla, const ArtinAlgebra::Ptr& algebra, Rng& rng);

struct PropertyResult {
    std::string module;
    std::string name;
    int cases = 0;
    bool pass = false;
    std::string detail;  // first failure description, empty when passing
};

struct SelftestReport {
    uint64_t seed = 0;
    std::string profile;
    std::vector<PropertyResult> results;
    bool all_pass() const;
};

// Runs every module's invariant suite with deterministic seeding. Profile
// "small" keeps each suite to a few dozen cases; "medium" multiplies counts.
SelftestReport run_selftest(uint64_t seed, const std::string& profile);

Json selftest_report_to_json(const SelftestReport& report);

}  // namespace deform
