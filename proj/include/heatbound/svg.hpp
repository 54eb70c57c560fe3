#pragma once

// Static SVG figures built only from the CSV tables the commands write.

#include <string>

#include "heatbound/csv.hpp"

namespace heatbound::svg {

// Columns t, beta_Q, B_en, B_th: the heat and both bounds against time.
std::string trajectory_plot(const csv::Table& table);

// Columns vx0, vz0, tighter: which bound is tighter over the Bloch disk.
std::string tightness_map(const csv::Table& table);

// Columns vx0, vz0, crossover_t: colour-coded crossover time, blank where none.
std::string crossover_map(const csv::Table& table);

// Picks one of the above from the header.
std::string plot_for(const csv::Table& table);

}  // namespace heatbound::svg
