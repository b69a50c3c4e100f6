#ifndef MORI_PERMGROUP_HPP
#define MORI_PERMGROUP_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mori {

/// One conjugacy class of subgroups of S_n.
struct SubgroupClassInfo {
    std::size_t order = 0;
    std::size_t class_size = 0;  // number of conjugates
    bool transitive = false;
    bool has_n_minus_1_cycle = false;
    bool has_transposition = false;
    bool is_full_symmetric = false;
};

struct SubgroupOracleReport {
    unsigned n = 0;
    bool property_holds = false;  // every transitive subgroup with an
                                  // (n-1)-cycle and a transposition is S_n
    std::size_t subgroup_count = 0;     // all subgroups, trivial included
    std::size_t class_count = 0;        // conjugacy classes of subgroups
    std::size_t transitive_class_count = 0;
    std::vector<SubgroupClassInfo> classes;
};

// Enumerates every subgroup of S_n (n odd, 3 <= n <= 7) by incremental
// generation-closure: starting from the trivial group, repeatedly adjoin a
// cyclic subgroup and close, deduplicating up to conjugacy and expanding
// each class to count all subgroups.  Desk-scale only; larger n is refused.
SubgroupOracleReport subgroup_oracle(unsigned n);

}  // namespace mori

#endif
