#ifndef SHIELDSIM_FLOORPLAN_HPP
#define SHIELDSIM_FLOORPLAN_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace shieldsim {

struct GridLoc {
    int x = 0;
    int y = 0;

    friend bool operator==(const GridLoc &a, const GridLoc &b) = default;
    friend auto operator<=>(const GridLoc &a, const GridLoc &b) = default;
};

// Manhattan distance in grid cells.
int manhattan(const GridLoc &a, const GridLoc &b);

// Spatial grid of the fabric. Named locations anchor the victim, the noise
// bank and any other fixed block referenced from a scenario config.
class Floorplan {
  public:
    Floorplan() = default;
    Floorplan(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    bool contains(const GridLoc &loc) const;

    // Throws std::invalid_argument on duplicate label or off-grid location.
    void add_location(const std::string &label, GridLoc loc);

    bool has_location(const std::string &label) const;
    GridLoc location(const std::string &label) const;

    const std::map<std::string, GridLoc> &named_locations() const { return named_; }

  private:
    int width_ = 0;
    int height_ = 0;
    std::map<std::string, GridLoc> named_;
};

} // namespace shieldsim

#endif
