#pragma once

#include <string>
#include <vector>

#include "hofj/dynamics.hpp"
#include "hofj/sparsifier.hpp"

namespace hofj {

/// Read a vector from single-column text (one value per line, line index =
/// compacted node id) or a JSON array when the file starts with '['.
Vector read_vector(const std::string& path);

/// Write a vector; `.json` extension selects a JSON array, anything else
/// single-column text.
void write_vector(const Vector& v, const std::string& path);

/// Sorted `u v w` edge list of the merged sparsifier plus a JSON diagnostics
/// sidecar at `path + ".json"`.
void write_sparsifier(const SparsifierOutput& sp, const std::string& path);

/// Iteration trace as CSV: step, max_delta[, bound_value].
void write_trace_csv(const std::string& path, const std::vector<double>& deltas,
                     const std::vector<double>& bounds = {});

/// Minimal static line chart (log-log optional) for sweep curves.
void write_svg_curve(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<double>& xs, const std::vector<double>& ys,
                     bool log_x = true, bool log_y = true);

}  // namespace hofj
