#include "lzcontrol/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace lzcontrol {

std::string format_double(double value) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_control_csv(std::ostream& out, const ControlField& control) {
  out << "t,C\n";
  for (std::size_t k = 0; k < control.size(); ++k) {
    out << format_double(control.grid().midpoint(k)) << ',' << format_double(control[k]) << '\n';
  }
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("not a number: '" + std::string(field) + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value", line);
  return v;
}

// t_0 + t_{N-1} = N dt = t_f in exact arithmetic; nudge by a few ulps so the
// midpoints regenerate the file's times exactly when they were written by us.
double recover_final_time(const std::vector<double>& t) {
  const std::size_t n = t.size();
  const double guess = t.front() + t.back();
  auto mismatches = [&](double tf) {
    const TimeGrid g(n, tf);
    std::size_t bad = 0;
    for (std::size_t k = 0; k < n; ++k) bad += g.midpoint(k) != t[k];
    return bad;
  };
  double best = guess;
  std::size_t best_bad = mismatches(guess);
  double up = guess;
  double down = guess;
  for (int i = 0; i < 8 && best_bad != 0; ++i) {
    up = std::nextafter(up, INFINITY);
    down = std::nextafter(down, -INFINITY);
    for (double cand : {up, down}) {
      const std::size_t bad = mismatches(cand);
      if (bad < best_bad) {
        best = cand;
        best_bad = bad;
      }
    }
  }
  return best;
}

}  // namespace

void write_control_csv(const std::filesystem::path& path, const ControlField& control) {
  auto out = open_out(path);
  write_control_csv(out, control);
  if (!out) throw IoError("write failed: " + path.string());
}

ControlField read_control_csv(std::istream& in, const ShapeFunction& shape) {
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::vector<double> t;
  std::vector<double> c;
  std::vector<std::size_t> source_line;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (row == "t,C") continue;
      if (row.find_first_not_of("0123456789+-.eE, \t") != std::string_view::npos) {
        throw ParseError("expected header 't,C'", lineno);
      }
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected two columns", lineno);
    if (row.find(',', comma + 1) != std::string_view::npos) throw ParseError("too many columns", lineno);
    t.push_back(parse_number(row.substr(0, comma), lineno));
    c.push_back(parse_number(row.substr(comma + 1), lineno));
    source_line.push_back(lineno);
  }
  if (in.bad()) throw IoError("read error");
  if (t.empty()) throw ParseError("control file has no samples", lineno);
  if (!(t.front() > 0.0)) throw ParseError("first midpoint must be positive", source_line[0]);

  const double tf = recover_final_time(t);
  const TimeGrid grid(t.size(), tf);
  const double tol = 1e-9 * tf;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(std::abs(t[k] - grid.midpoint(k)) <= tol)) {
      throw ParseError("time " + format_double(t[k]) + " is off the uniform midpoint grid (expected " +
                           format_double(grid.midpoint(k)) + ")",
                       source_line[k]);
    }
  }
  return ControlField(grid, shape, std::move(c));
}

ControlField read_control_csv(const std::filesystem::path& path, const ShapeFunction& shape) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_control_csv(in, shape);
}

void write_history_csv(std::ostream& out, const OptResult& result) {
  out << "iter,J,delta,eta_r_norm\n";
  for (std::size_t i = 0; i < result.history.size(); ++i) {
    const auto& h = result.history[i];
    out << i << ',' << format_double(h.objective) << ',' << format_double(h.distance) << ','
        << format_double(h.eta_r_norm) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << "epsilon,delta\n";
  for (std::size_t i = 0; i < sweep.epsilon.size(); ++i) {
    out << format_double(sweep.epsilon[i]) << ',' << format_double(sweep.delta[i]) << '\n';
  }
}

void write_ensemble_csv(std::ostream& out, const EnsembleStats& stats) {
  out << "epsilon,fidelity,x,y,z\n";
  for (const auto& m : stats.members) {
    out << format_double(m.epsilon) << ',' << format_double(m.fidelity) << ',' << format_double(m.bloch.x) << ','
        << format_double(m.bloch.y) << ',' << format_double(m.bloch.z) << '\n';
  }
}

nlohmann::json constraint_json(const ConstraintVector& eta) {
  return {{"eta", std::vector<double>(eta.values.begin(), eta.values.end())},
          {"eta_r_norm", eta.reduced_norm()}};
}

nlohmann::json metrics_json(const OptResult& r) {
  return {{"delta", r.distance},
          {"eta_r_norm", r.eta_r_norm},
          {"fluence", r.fluence},
          {"theta_tf", r.theta_final},
          {"max_abs_C", r.max_abs_control},
          {"iters", r.iterations},
          {"eta", std::vector<double>(r.eta.values.begin(), r.eta.values.end())},
          {"J", r.objective},
          {"stop_reason", to_string(r.stop_reason)}};
}

nlohmann::json stats_json(const EnsembleStats& s) {
  return {{"min", s.min}, {"max", s.max}, {"mean", s.mean}, {"std", s.std}};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace lzcontrol
