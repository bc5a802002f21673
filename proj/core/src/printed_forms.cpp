#include "dmotto/printed_forms.hpp"

#include <algorithm>
#include <cmath>

namespace dmotto::printed {

namespace {
double doublet_gap(double J, double D) { return J * std::hypot(1.0, D); }
}  // namespace

std::vector<LabelMap> all_label_maps() {
    std::vector<LabelMap> maps;
    LabelMap m = kIdentity;
    do {
        maps.push_back(m);
    } while (std::next_permutation(m.begin(), m.end()));
    return maps;
}

double vary_dm_heat_hot(const VaryDM& proto, const Terms& t) {
    return doublet_gap(proto.J, proto.D_hot) * t.doublet_group() + 2.0 * proto.B * t.field_group();
}

double vary_dm_heat_cold(const VaryDM& proto, const Terms& t) {
    return -doublet_gap(proto.J, proto.D_cold) * t.doublet_group() - 2.0 * proto.B * t.field_group();
}

double vary_dm_work(const VaryDM& proto, const Terms& t) {
    return proto.J * (std::hypot(1.0, proto.D_hot) - std::hypot(1.0, proto.D_cold)) * t.doublet_group();
}

double vary_field_heat_hot(const VaryField& proto, const Terms& t) {
    return doublet_gap(proto.J, proto.D) * t.doublet_group() + 2.0 * proto.B_hot * t.field_group();
}

double vary_field_heat_cold(const VaryField& proto, const Terms& t) {
    return -doublet_gap(proto.J, proto.D) * t.doublet_group() - 2.0 * proto.B_cold * t.field_group();
}

double vary_field_work(const VaryField& proto, const Terms& t) {
    return 2.0 * (proto.B_hot - proto.B_cold) * t.field_group();
}

double local_heat_hot(const VaryField& proto, const Terms& t) { return proto.B_hot * t.field_group(); }

double local_heat_cold(const VaryField& proto, const Terms& t) { return -proto.B_cold * t.field_group(); }

double local_work(const VaryField& proto, const Terms& t) {
    return (proto.B_hot - proto.B_cold) * t.field_group();
}

Matrix4 density_layout(const Populations& pops, const LabelMap& map) {
    const auto p = [&](int k) { return pops[map[static_cast<std::size_t>(k - 1)]]; };
    Matrix4 m;
    m(0, 0) = p(2);
    m(1, 1) = 0.5 * (p(1) + p(3));
    m(2, 2) = 0.5 * (p(1) + p(3));
    m(1, 2) = 0.5 * (p(3) - p(1));
    m(2, 1) = 0.5 * (p(3) - p(1));
    m(3, 3) = p(4);
    return m;
}

double reduced_low_population(const Populations& pops, const LabelMap& map) {
    const auto p = [&](int k) { return pops[map[static_cast<std::size_t>(k - 1)]]; };
    return 0.5 - 0.5 * (p(2) - p(4));
}

}  // namespace dmotto::printed
