#include "shieldsim/floorplan.hpp"

#include <cstdlib>
#include <stdexcept>

namespace shieldsim {

int manhattan(const GridLoc &a, const GridLoc &b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

Floorplan::Floorplan(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("floorplan dimensions must be positive");
}

bool Floorplan::contains(const GridLoc &loc) const {
    return loc.x >= 0 && loc.x < width_ && loc.y >= 0 && loc.y < height_;
}

void Floorplan::add_location(const std::string &label, GridLoc loc) {
    if (!contains(loc))
        throw std::invalid_argument("floorplan location '" + label + "' is off the grid");
    if (named_.count(label))
        throw std::invalid_argument("duplicate floorplan label '" + label + "'");
    named_.emplace(label, loc);
}

bool Floorplan::has_location(const std::string &label) const { return named_.count(label) > 0; }

GridLoc Floorplan::location(const std::string &label) const {
    auto it = named_.find(label);
    if (it == named_.end())
        throw std::invalid_argument("unknown floorplan label '" + label + "'");
    return it->second;
}

} // namespace shieldsim
