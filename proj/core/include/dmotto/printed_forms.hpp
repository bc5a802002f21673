#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "dmotto/cycle.hpp"

namespace dmotto::printed {

/// Maps a printed level index (1..4, stored 0-based) onto a canonical level.
using LabelMap = std::array<std::size_t, kLevels>;

inline constexpr LabelMap kIdentity{0, 1, 2, 3};

// All 24 label maps in lexicographic order, identity first.
std::vector<LabelMap> all_label_maps();

/// Printed-formula populations: p_k (unprimed) is the cold-bath population and
/// p'_k (primed) the hot-bath population of printed label k, resolved through
/// a label map.
class Terms {
public:
    Terms(const Populations& cold, const Populations& hot, const LabelMap& map = kIdentity)
        : cold_(cold), hot_(hot), map_(map) {}

    double p(int k) const { return cold_[map_[static_cast<std::size_t>(k - 1)]]; }
    double pp(int k) const { return hot_[map_[static_cast<std::size_t>(k - 1)]]; }

    // p3 - p'3 + p'1 - p1 and p4 - p'4 + p'2 - p2: the two groupings every
    // printed expression is built from.
    double doublet_group() const { return p(3) - pp(3) + pp(1) - p(1); }
    double field_group() const { return p(4) - pp(4) + pp(2) - p(2); }

private:
    const Populations& cold_;
    const Populations& hot_;
    LabelMap map_;
};

double vary_dm_heat_hot(const VaryDM& proto, const Terms& t);
double vary_dm_heat_cold(const VaryDM& proto, const Terms& t);
double vary_dm_work(const VaryDM& proto, const Terms& t);

double vary_field_heat_hot(const VaryField& proto, const Terms& t);
double vary_field_heat_cold(const VaryField& proto, const Terms& t);
double vary_field_work(const VaryField& proto, const Terms& t);

double local_heat_hot(const VaryField& proto, const Terms& t);
double local_heat_cold(const VaryField& proto, const Terms& t);
double local_work(const VaryField& proto, const Terms& t);

// Two-spin density matrix in the printed real layout, built from one
// population set (either bath) of which printed label k reads pops[map[k-1]].
Matrix4 density_layout(const Populations& pops, const LabelMap& map);

// Upper-left entry of the printed single-spin reduced state.
double reduced_low_population(const Populations& pops, const LabelMap& map);

}  // namespace dmotto::printed
