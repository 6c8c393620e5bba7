#include "ccmdp/occupation.hpp"

namespace ccmdp {

OccupationMeasure make_occupation(int horizon, int num_states, int num_actions) {
    OccupationMeasure rho;
    rho.horizon = horizon;
    rho.num_states = num_states;
    rho.num_actions = num_actions;
    rho.rho.assign(static_cast<std::size_t>(horizon) * num_states * num_actions, 0.0);
    rho.terminal.assign(num_states, 0.0);
    return rho;
}

} // namespace ccmdp
