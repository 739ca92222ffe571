#pragma once

#include <array>
#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "spinsqueeze/coherent_states.hpp"
#include "spinsqueeze/squeezing.hpp"

namespace spinsqueeze {

struct SweepAxes {
  bool x = true, y = true, z = true;

  bool any() const { return x || y || z; }
  bool operator==(const SweepAxes&) const = default;
};

/// One time sweep of the squeezing parameters: steps evenly spaced t values
/// in [t_min, t_max], evaluated for the requested axes on the state
/// |eta, t> evolved under the parsed Hamiltonian f_expr.
struct SweepConfig {
  int two_j = 10;
  Complex eta{0.1, 0.0};
  std::string f_expr = "N^2";
  double t_min = 0.0;
  double t_max = 3.0;
  int steps = 601;
  SweepAxes axes;
};

/// xi2[0..2] hold the x, y, z cells; only requested axes are meaningful.
/// An engaged optional is a value, nullopt is the "undef" sentinel
/// (denominator cutoff triggered).
struct SweepRow {
  double t = 0.0;
  std::array<std::optional<double>, 3> xi2;
};

inline std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  if (config.two_j < 0) throw std::invalid_argument("sweep: two_j must be nonnegative");
  if (config.steps < 1) throw std::invalid_argument("sweep: steps must be >= 1");
  if (!std::isfinite(config.t_min) || !std::isfinite(config.t_max) ||
      config.t_min > config.t_max) {
    throw std::invalid_argument("sweep: require finite t_min <= t_max");
  }
  if (!config.axes.any()) throw std::invalid_argument("sweep: no axes requested");

  // Parse failures surface here, before any state is built.
  const NonlinearFunction hamiltonian = NonlinearFunction::parse(config.f_expr);
  const SpinSpace space(config.two_j);
  const CartesianOperators ops = cartesian_components(space);

  // A degenerate interval collapses to a single row so that t stays strictly
  // increasing across rows.
  const int steps = config.t_min == config.t_max ? 1 : config.steps;
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double t =
        steps == 1 ? config.t_min
                   : config.t_min + i * (config.t_max - config.t_min) / (steps - 1);
    const StateVector psi =
        nonlinear_scs(EvolvedParams{CoherentParams{space, config.eta}, hamiltonian, t});
    const AxisReports reports = squeezing_xyz(psi, ops);
    SweepRow row;
    row.t = t;
    const std::array<const std::optional<SqueezingReport>*, 3> per_axis{
        &reports.x, &reports.y, &reports.z};
    const std::array<bool, 3> requested{config.axes.x, config.axes.y, config.axes.z};
    for (int a = 0; a < 3; ++a) {
      if (requested[a] && per_axis[a]->has_value()) row.xi2[a] = (*per_axis[a])->xi2;
    }
    rows.push_back(row);
  }
  return rows;
}

/// 12 significant digits, scientific notation. The CSV contract: a value
/// formatted this way, parsed back, formats identically.
inline std::string format_float(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return std::string(buf);
}

inline void write_sweep_csv(std::ostream& out, const SweepAxes& axes,
                            const std::vector<SweepRow>& rows) {
  out << "t";
  if (axes.x) out << ",xi2_x";
  if (axes.y) out << ",xi2_y";
  if (axes.z) out << ",xi2_z";
  out << "\n";
  const std::array<bool, 3> requested{axes.x, axes.y, axes.z};
  for (const SweepRow& row : rows) {
    out << format_float(row.t);
    for (int a = 0; a < 3; ++a) {
      if (!requested[a]) continue;
      out << ',' << (row.xi2[a] ? format_float(*row.xi2[a]) : std::string("undef"));
    }
    out << "\n";
  }
}

inline std::string sweep_csv_text(const SweepAxes& axes, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  write_sweep_csv(out, axes, rows);
  return out.str();
}

namespace detail {

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline double parse_strict_double(std::string_view text, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string(what) + ": malformed number '" +
                                std::string(text) + "'");
  }
  return v;
}

}  // namespace detail

struct ParsedSweep {
  SweepAxes axes;
  std::vector<SweepRow> rows;
};

/// Reads CSV produced by write_sweep_csv. Re-emitting the result is
/// byte-identical to the original.
inline ParsedSweep read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("sweep csv: missing header");
  const auto header = detail::split_csv_line(line);
  if (header.empty() || header[0] != "t") {
    throw std::invalid_argument("sweep csv: header must start with 't'");
  }
  ParsedSweep parsed;
  parsed.axes = SweepAxes{false, false, false};
  std::vector<int> columns;  // axis index per data column
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] == "xi2_x") {
      parsed.axes.x = true;
      columns.push_back(0);
    } else if (header[i] == "xi2_y") {
      parsed.axes.y = true;
      columns.push_back(1);
    } else if (header[i] == "xi2_z") {
      parsed.axes.z = true;
      columns.push_back(2);
    } else {
      throw std::invalid_argument("sweep csv: unknown column '" + std::string(header[i]) + "'");
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != columns.size() + 1) {
      throw std::invalid_argument("sweep csv: wrong cell count in row '" + line + "'");
    }
    SweepRow row;
    row.t = detail::parse_strict_double(cells[0], "sweep csv");
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (cells[c + 1] != "undef") {
        row.xi2[columns[c]] = detail::parse_strict_double(cells[c + 1], "sweep csv");
      }
    }
    parsed.rows.push_back(row);
  }
  return parsed;
}

/// Complex eta in the CLI wire format: `RE`, `RE+IMi` or `RE-IMi`,
/// e.g. `0.5`, `0.5+0.3i`, `-1+0.25i`. No spaces.
inline Complex parse_eta(std::string_view text) {
  const char* ptr = text.data();
  const char* end = text.data() + text.size();
  double re = 0.0;
  auto first = std::from_chars(ptr, end, re);
  if (first.ec != std::errc() || first.ptr == ptr) {
    throw std::invalid_argument("eta: expected RE or RE+IMi, got '" + std::string(text) + "'");
  }
  ptr = first.ptr;
  if (ptr == end) return Complex(re, 0.0);
  double sign = 0.0;
  if (*ptr == '+') sign = 1.0;
  if (*ptr == '-') sign = -1.0;
  if (sign == 0.0) {
    throw std::invalid_argument("eta: expected '+' or '-' before imaginary part in '" +
                                std::string(text) + "'");
  }
  ++ptr;
  double im = 0.0;
  auto second = std::from_chars(ptr, end, im);
  if (second.ec != std::errc() || second.ptr == ptr || second.ptr != end - 1 ||
      *second.ptr != 'i') {
    throw std::invalid_argument("eta: imaginary part must end in 'i' in '" + std::string(text) +
                                "'");
  }
  return Complex(re, sign * im);
}

inline std::string format_eta(Complex eta) {
  if (eta.imag() == 0.0) return format_float(eta.real());
  return format_float(eta.real()) + (eta.imag() < 0.0 ? "-" : "+") +
         format_float(std::abs(eta.imag())) + "i";
}

/// Axes as a compact string over {x, y, z}, e.g. "xy" or "xyz". Nonempty,
/// no duplicates.
inline SweepAxes parse_axes(std::string_view text) {
  SweepAxes axes{false, false, false};
  for (char c : text) {
    bool* slot = c == 'x' ? &axes.x : c == 'y' ? &axes.y : c == 'z' ? &axes.z : nullptr;
    if (slot == nullptr) {
      throw std::invalid_argument(std::string("axes: unknown axis '") + c + "'");
    }
    if (*slot) throw std::invalid_argument(std::string("axes: duplicate axis '") + c + "'");
    *slot = true;
  }
  if (!axes.any()) throw std::invalid_argument("axes: at least one of xyz required");
  return axes;
}

/// Optional per-field overrides from a `key = value` config file; command
/// line flags are applied on top.
struct SweepOverrides {
  std::optional<int> two_j;
  std::optional<Complex> eta;
  std::optional<std::string> f_expr;
  std::optional<double> t_min, t_max;
  std::optional<int> steps;
  std::optional<SweepAxes> axes;
  std::optional<std::string> out;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline int parse_strict_int(std::string_view text, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string(what) + ": malformed integer '" +
                                std::string(text) + "'");
  }
  return v;
}

}  // namespace detail

/// Config file grammar: one `key = value` per line, `#` starts a comment,
/// blank lines ignored. Keys mirror the sweep flags: two_j, eta, f, t_min,
/// t_max, steps, axes, out.
inline SweepOverrides read_sweep_config(std::istream& in) {
  SweepOverrides overrides;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body(line);
    const std::size_t hash = body.find('#');
    if (hash != std::string_view::npos) body = body.substr(0, hash);
    body = detail::trim(body);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    const std::string_view key = detail::trim(body.substr(0, eq));
    const std::string_view value = detail::trim(body.substr(eq + 1));
    try {
      if (key == "two_j") {
        overrides.two_j = detail::parse_strict_int(value, "two_j");
      } else if (key == "eta") {
        overrides.eta = parse_eta(value);
      } else if (key == "f") {
        overrides.f_expr = std::string(value);
      } else if (key == "t_min") {
        overrides.t_min = detail::parse_strict_double(value, "t_min");
      } else if (key == "t_max") {
        overrides.t_max = detail::parse_strict_double(value, "t_max");
      } else if (key == "steps") {
        overrides.steps = detail::parse_strict_int(value, "steps");
      } else if (key == "axes") {
        overrides.axes = parse_axes(value);
      } else if (key == "out") {
        overrides.out = std::string(value);
      } else {
        throw std::invalid_argument("unknown key '" + std::string(key) + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return overrides;
}

inline void apply_overrides(SweepConfig& config, const SweepOverrides& overrides) {
  if (overrides.two_j) config.two_j = *overrides.two_j;
  if (overrides.eta) config.eta = *overrides.eta;
  if (overrides.f_expr) config.f_expr = *overrides.f_expr;
  if (overrides.t_min) config.t_min = *overrides.t_min;
  if (overrides.t_max) config.t_max = *overrides.t_max;
  if (overrides.steps) config.steps = *overrides.steps;
  if (overrides.axes) config.axes = *overrides.axes;
}

}  // namespace spinsqueeze
