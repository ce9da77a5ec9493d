#include "springleg/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "springleg/error.hpp"

namespace springleg {

namespace {

enum class Field {
  Mass, Gravity, Segment, Standing, MaxDeformation, Stiffness, FreeLength, SolidLength,
  InitialPosition, ForceCap, Efficiency, RatchetPitch, Policy, MaxIterations, SampleCount,
  TolAbs, TolGain,
};

struct KeySpec {
  const char* canonical;
  Field field;
  bool required;
};

constexpr KeySpec kKeys[] = {
    {"mass_kg", Field::Mass, true},
    {"gravity_mps2", Field::Gravity, true},
    {"segment_length_m", Field::Segment, true},
    {"standing_length_m", Field::Standing, true},
    {"max_deformation_m", Field::MaxDeformation, true},
    {"spring_stiffness_n_per_m", Field::Stiffness, true},
    {"spring_free_length_m", Field::FreeLength, true},
    {"spring_solid_length_m", Field::SolidLength, true},
    {"initial_spring_position_m", Field::InitialPosition, true},
    {"force_cap_n", Field::ForceCap, false},
    {"efficiency", Field::Efficiency, false},
    {"ratchet_pitch_m", Field::RatchetPitch, false},
    {"policy", Field::Policy, false},
    {"max_iterations", Field::MaxIterations, false},
    {"sample_count", Field::SampleCount, false},
    {"tol_abs_m", Field::TolAbs, false},
    {"tol_gain_j", Field::TolGain, false},
};

struct ResolvedKey {
  const KeySpec* spec;
  double scale;  // multiply the written value by this to get SI
};

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::optional<ResolvedKey> resolve_key(std::string_view key) {
  for (const auto& k : kKeys)
    if (key == k.canonical) return ResolvedKey{&k, 1.0};
  // Unit aliases: *_mm for *_m, *_n_per_mm for *_n_per_m.
  std::string si;
  double scale = 1.0;
  if (ends_with(key, "_n_per_mm")) {
    si = std::string(key.substr(0, key.size() - 9)) + "_n_per_m";
    scale = 1000.0;
  } else if (ends_with(key, "_mm")) {
    si = std::string(key.substr(0, key.size() - 3)) + "_m";
    scale = 1e-3;
  } else {
    return std::nullopt;
  }
  for (const auto& k : kKeys)
    if (si == k.canonical && k.field != Field::TolAbs) return ResolvedKey{&k, scale};
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& msg) {
  std::ostringstream os;
  os << origin;
  if (line) os << ":" << line;
  os << ": " << msg;
  throw Error(ErrorKind::Configuration, os.str());
}

std::optional<double> parse_double(std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::size_t> parse_count(std::string_view text) {
  unsigned long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return static_cast<std::size_t>(v);
}

std::size_t to_count(std::string_view key, double value) {
  if (!(value >= 0.0) || std::floor(value) != value || value > 1e15) {
    std::ostringstream os;
    os << key << " must be a non-negative integer (got " << value << ")";
    throw Error(ErrorKind::Configuration, os.str());
  }
  return static_cast<std::size_t>(value);
}

void set_field(Configuration& c, Field f, double v) {
  switch (f) {
    case Field::Mass: c.body.mass = v; break;
    case Field::Gravity: c.body.gravity = v; break;
    case Field::Segment: c.leg.segment_length = v; break;
    case Field::Standing: c.leg.standing_length = v; break;
    case Field::MaxDeformation: c.leg.max_deformation = v; break;
    case Field::Stiffness: c.spring.stiffness = v; break;
    case Field::FreeLength: c.spring.free_length = v; break;
    case Field::SolidLength: c.spring.solid_length = v; break;
    case Field::InitialPosition: c.initial_spring_position = v; break;
    case Field::ForceCap: c.force_cap = v; break;
    case Field::Efficiency: c.loss.efficiency = v; break;
    case Field::RatchetPitch: c.loss.ratchet_pitch = v; break;
    case Field::MaxIterations: c.max_iterations = to_count("max_iterations", v); break;
    case Field::SampleCount: c.sample_count = to_count("sample_count", v); break;
    case Field::TolAbs: c.tolerances.spring_length = v; break;
    case Field::TolGain: c.tolerances.energy_gain = v; break;
    case Field::Policy:
      throw Error(ErrorKind::Configuration, "policy is not a numeric parameter");
  }
}

template <typename Fn>
void for_each_entry(std::string_view text, const std::string& origin, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(origin, line_no, "expected `key = value`");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, line_no, "empty key");
    if (value.empty()) fail(origin, line_no, "empty value for `" + std::string(key) + "`");
    fn(line_no, key, value);
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Configuration, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Configuration parse_config_text(std::string_view text, const std::string& origin) {
  Configuration c;
  std::set<std::string> seen;

  for_each_entry(text, origin, [&](std::size_t line, std::string_view key, std::string_view value) {
    const auto resolved = resolve_key(key);
    if (!resolved) fail(origin, line, "unknown key `" + std::string(key) + "`");
    const auto& spec = *resolved->spec;
    if (!seen.insert(spec.canonical).second)
      fail(origin, line, "duplicate key `" + std::string(spec.canonical) + "`");

    if (spec.field == Field::Policy) {
      if (value == "force_limited")
        c.policy = CompressionPolicy::ForceLimited;
      else if (value == "full_range")
        c.policy = CompressionPolicy::FullRange;
      else
        fail(origin, line, "policy must be force_limited or full_range");
      return;
    }
    if (spec.field == Field::MaxIterations || spec.field == Field::SampleCount) {
      const auto n = parse_count(value);
      if (!n) fail(origin, line, std::string(spec.canonical) + " must be a non-negative integer");
      set_field(c, spec.field, static_cast<double>(*n));
      return;
    }
    const auto v = parse_double(value);
    if (!v) fail(origin, line, "`" + std::string(key) + "` is not a finite number");
    set_field(c, spec.field, *v * resolved->scale);
  });

  for (const auto& k : kKeys)
    if (k.required && !seen.count(k.canonical))
      fail(origin, 0, "missing required key `" + std::string(k.canonical) + "`");

  try {
    validate(c);
  } catch (const Error& e) {
    fail(origin, 0, e.what());
  }
  return c;
}

Configuration parse_config(const std::filesystem::path& path) {
  return parse_config_text(read_text_file(path), path.string());
}

std::string format_config(const Configuration& c) {
  std::ostringstream os;
  auto put = [&](const char* key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << key << " = " << buf << "\n";
  };
  put("mass_kg", c.body.mass);
  put("gravity_mps2", c.body.gravity);
  put("segment_length_m", c.leg.segment_length);
  put("standing_length_m", c.leg.standing_length);
  put("max_deformation_m", c.leg.max_deformation);
  put("spring_stiffness_n_per_m", c.spring.stiffness);
  put("spring_free_length_m", c.spring.free_length);
  put("spring_solid_length_m", c.spring.solid_length);
  put("initial_spring_position_m", c.initial_spring_position);
  if (c.force_cap) put("force_cap_n", *c.force_cap);
  put("efficiency", c.loss.efficiency);
  put("ratchet_pitch_m", c.loss.ratchet_pitch);
  os << "policy = " << (c.policy == CompressionPolicy::ForceLimited ? "force_limited" : "full_range")
     << "\n";
  os << "max_iterations = " << c.max_iterations << "\n";
  os << "sample_count = " << c.sample_count << "\n";
  put("tol_abs_m", c.tolerances.spring_length);
  put("tol_gain_j", c.tolerances.energy_gain);
  return os.str();
}

const std::vector<std::string>& numeric_config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& k : kKeys)
      if (k.field != Field::Policy) out.emplace_back(k.canonical);
    return out;
  }();
  return keys;
}

void apply_parameter(Configuration& config, std::string_view key, double value) {
  const auto resolved = resolve_key(key);
  if (!resolved) throw Error(ErrorKind::Configuration, "unknown key `" + std::string(key) + "`");
  set_field(config, resolved->spec->field, value * resolved->scale);
}

std::size_t ParameterGrid::size() const noexcept {
  if (axes.empty()) return 0;
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  return n;
}

std::vector<std::pair<std::string, double>> ParameterGrid::point(std::size_t index) const {
  std::vector<std::pair<std::string, double>> out(axes.size());
  for (std::size_t i = axes.size(); i-- > 0;) {
    const auto& axis = axes[i];
    out[i] = {axis.key, axis.values[index % axis.values.size()]};
    index /= axis.values.size();
  }
  return out;
}

ParameterGrid parse_grid_text(std::string_view text, const std::string& origin) {
  ParameterGrid grid;
  std::set<std::string> seen;
  for_each_entry(text, origin, [&](std::size_t line, std::string_view key, std::string_view value) {
    const auto resolved = resolve_key(key);
    if (!resolved || resolved->spec->field == Field::Policy)
      fail(origin, line, "unknown or non-numeric grid key `" + std::string(key) + "`");
    if (!seen.insert(resolved->spec->canonical).second)
      fail(origin, line, "duplicate grid key `" + std::string(key) + "`");
    GridAxis axis;
    axis.key = std::string(key);
    std::size_t pos = 0;
    while (pos <= value.size()) {
      const auto comma = value.find(',', pos);
      const auto item = trim(value.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                : comma - pos));
      pos = comma == std::string_view::npos ? value.size() + 1 : comma + 1;
      const auto v = parse_double(item);
      if (!v) fail(origin, line, "grid value `" + std::string(item) + "` is not a finite number");
      axis.values.push_back(*v);
    }
    grid.axes.push_back(std::move(axis));
  });
  if (grid.axes.empty()) fail(origin, 0, "grid defines no axes");
  return grid;
}

ParameterGrid parse_grid(const std::filesystem::path& path) {
  return parse_grid_text(read_text_file(path), path.string());
}

}  // namespace springleg
