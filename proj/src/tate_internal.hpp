#pragma once

#include "watkins/local_data.hpp"

namespace watkins::detail {

struct TateOutcome {
    LocalReduction local;
    WeierstrassModel minimal_at_p; // integral, minimal at p, unchanged valuations elsewhere
    Transform transform;           // input -> minimal_at_p
};

TateOutcome run_tate(const WeierstrassModel& model, const Integer& p);

} // namespace watkins::detail
