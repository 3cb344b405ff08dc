#include "shieldsim/pdn.hpp"

#include <stdexcept>
#include <utility>

namespace shieldsim {

void PdnParams::validate() const {
    if (v_nom <= 0.0)
        throw std::invalid_argument("pdn.v_nom must be > 0");
    if (r_eff < 0.0)
        throw std::invalid_argument("pdn.r_eff must be >= 0");
    if (l_eff < 0.0)
        throw std::invalid_argument("pdn.l_eff must be >= 0");
    if (lambda < 0.0)
        throw std::invalid_argument("pdn.lambda must be >= 0");
    if (tick_period <= 0.0)
        throw std::invalid_argument("pdn.tick_period must be > 0");
}

double attenuation(int distance_cells, double lambda) {
    return 1.0 / (1.0 + lambda * static_cast<double>(distance_cells));
}

double source_current(double power_demand, double v_nom) {
    if (v_nom <= 0.0)
        throw std::invalid_argument("source_current: v_nom must be > 0");
    return power_demand / v_nom;
}

double voltage_at(const GridLoc &loc, const std::vector<CurrentSource> &sources,
                  const PdnParams &params, const Floorplan &plan) {
    double drop = 0.0;
    for (const CurrentSource &src : sources) {
        if (!plan.contains(src.location))
            throw std::invalid_argument("voltage_at: source off the floorplan");
        const double current = source_current(src.power_demand, params.v_nom);
        const double di = current - src.prev_current;
        const double local = params.r_eff * current + params.l_eff * di / params.tick_period;
        drop += attenuation(manhattan(loc, src.location), params.lambda) * local;
    }
    const double v = params.v_nom - drop;
    return v < 0.0 ? 0.0 : v;
}

PdnState::PdnState(Floorplan plan, PdnParams params)
    : plan_(std::move(plan)), params_(params) {
    params_.validate();
}

std::size_t PdnState::add_source(GridLoc loc) {
    if (!plan_.contains(loc))
        throw std::invalid_argument("PdnState: source off the floorplan");
    sources_.push_back(CurrentSource{loc, 0.0, 0.0});
    return sources_.size() - 1;
}

void PdnState::set_power(std::size_t index, double watts) {
    sources_.at(index).power_demand = watts;
}

double PdnState::voltage(const GridLoc &loc) const {
    return voltage_at(loc, sources_, params_, plan_);
}

void PdnState::advance() {
    for (CurrentSource &src : sources_)
        src.prev_current = source_current(src.power_demand, params_.v_nom);
}

} // namespace shieldsim
