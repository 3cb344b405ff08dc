#ifndef SHIELDSIM_PDN_HPP
#define SHIELDSIM_PDN_HPP

#include <cstddef>
#include <vector>

#include "shieldsim/floorplan.hpp"

namespace shieldsim {

// Electrical parameters of the shared power-distribution network. Each
// current source sees a lumped effective R/L toward the regulator; the drop
// it causes elsewhere decays with Manhattan distance as 1/(1 + lambda*d).
struct PdnParams {
    double v_nom = 1.0;        // volts
    double r_eff = 0.1;        // ohms
    double l_eff = 1e-8;       // henries
    double lambda = 0.5;       // attenuation per cell, dimensionless
    double tick_period = 1e-7; // seconds per simulation tick

    void validate() const; // throws std::invalid_argument
};

struct CurrentSource {
    GridLoc location;
    double power_demand = 0.0; // watts at the current tick
    double prev_current = 0.0; // amperes at the previous tick
};

// Spatial decay factor, 1 at distance zero.
double attenuation(int distance_cells, double lambda);

// Linearized source current I = P / v_nom. Rejects v_nom <= 0.
double source_current(double power_demand, double v_nom);

// Supply voltage at `loc` given the active sources. The inductive term uses
// the backward difference against each source's prev_current. Clamped at 0.
// Rejects sources that lie outside the floorplan.
double voltage_at(const GridLoc &loc, const std::vector<CurrentSource> &sources,
                  const PdnParams &params, const Floorplan &plan);

// One simulated grid with a fixed set of sources. Per tick: set the power
// demands, read voltages, then advance() to commit currents for the next
// tick's inductive term.
class PdnState {
  public:
    PdnState(Floorplan plan, PdnParams params);

    std::size_t add_source(GridLoc loc); // returns source index
    void set_power(std::size_t index, double watts);

    double voltage(const GridLoc &loc) const;
    void advance();

    const PdnParams &params() const { return params_; }
    const Floorplan &floorplan() const { return plan_; }
    const std::vector<CurrentSource> &sources() const { return sources_; }

  private:
    Floorplan plan_;
    PdnParams params_;
    std::vector<CurrentSource> sources_;
};

} // namespace shieldsim

#endif
