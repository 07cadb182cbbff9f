// Shared test fixtures.
#ifndef HBNUM_TESTS_FIXTURES_HPP
#define HBNUM_TESTS_FIXTURES_HPP

#include <cstdio>
#include <string>

#include "hbnum/dataset.hpp"
#include "hbnum/random.hpp"

namespace hbnum::testing {

/// SNARC trial table with a prescribed number of error trials and of correct
/// trials slower than the cutoff; every other RT is well below it.
/// Trials cycle subjects x {1,2,8,9} x {L,R}.
inline TrialTable snarc_fixture(std::size_t total, std::size_t errors, std::size_t slow, double cutoff,
                                std::uint64_t seed = 11) {
    TrialTable table;
    table.kind = TaskKind::Snarc;
    Rng rng(seed);
    const int numbers[] = {1, 2, 8, 9};
    for (std::size_t k = 0; k < total; ++k) {
        TrialRecord r;
        char name[16];
        std::snprintf(name, sizeof(name), "s%02zu", (k / 8) % 35 + 1);
        r.subject = name;
        r.stimulus = numbers[k % 4];
        r.hand = (k / 4) % 2 == 0 ? Hand::Left : Hand::Right;
        r.rt_ms = rng.uniform(300.0, 0.5 * cutoff);
        // Spread errors and slow trials through the table; slow ones are never errors.
        if (k % 7 == 3 && errors > 0) {
            r.is_error = true;
            --errors;
        } else if (k % 11 == 5 && slow > 0) {
            r.rt_ms = cutoff + 1.0 + rng.uniform(0.0, 2000.0);
            --slow;
        }
        table.rows.push_back(r);
    }
    return table;
}

/// NDE trial table; pairs are chosen so every ratio falls in a default bin.
inline TrialTable nde_fixture(std::size_t total, std::size_t errors, std::size_t slow, double cutoff,
                              std::uint64_t seed = 13) {
    TrialTable table;
    table.kind = TaskKind::Nde;
    Rng rng(seed);
    const NumberPair pairs[] = {{6, 5}, {10, 7}, {8, 5}, {13, 5}};  // bins 1..4
    for (std::size_t k = 0; k < total; ++k) {
        TrialRecord r;
        char name[16];
        std::snprintf(name, sizeof(name), "c%02zu", (k / 4) % 55 + 1);
        r.subject = name;
        r.stimulus = pairs[k % 4];
        r.rt_ms = rng.uniform(500.0, 0.5 * cutoff);
        if (k % 7 == 2 && errors > 0) {
            r.is_error = true;
            --errors;
        } else if (k % 13 == 6 && slow > 0) {
            r.rt_ms = cutoff + 50.0;
            --slow;
        }
        table.rows.push_back(r);
    }
    return table;
}

}  // namespace hbnum::testing

#endif  // HBNUM_TESTS_FIXTURES_HPP
