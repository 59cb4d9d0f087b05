#include "parkassign/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace parkassign {

using nlohmann::json;

int Scenario::total_capacity() const {
  int total = 0;
  for (const auto& lot : lots) total += lot.capacity;
  return total;
}

std::vector<int> Scenario::capacities() const {
  std::vector<int> caps;
  caps.reserve(lots.size());
  for (const auto& lot : lots) caps.push_back(lot.capacity);
  return caps;
}

ProjectedLayout project_layout(const Scenario& s) {
  ProjectedLayout out;
  out.destination = miller_project(s.destination);
  out.lots.reserve(s.lots.size());
  for (const auto& lot : s.lots) out.lots.push_back(miller_project(lot.location));
  out.entries.reserve(s.entries.size());
  for (const auto& e : s.entries) out.entries.push_back(miller_project(e.location));
  return out;
}

namespace {

std::string join_lines(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& v : items) out += "\n  " + v;
  return out;
}

bool valid_geo(const GeoCoord& g) {
  try {
    check_geo(g);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

void check_positive(std::vector<std::string>& v, const char* field, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) v.push_back(std::string(field) + ": must be > 0");
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error("scenario failed validation:" + join_lines(violations)),
      violations_(std::move(violations)) {}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> v;
  const auto& k = s.kinematics;
  check_positive(v, "kinematics.W", k.spot_width);
  check_positive(v, "kinematics.v_c", k.cruise_speed);
  check_positive(v, "kinematics.v_w", k.walk_speed);
  check_positive(v, "kinematics.v_ud", k.ramp_speed);
  check_positive(v, "kinematics.t_stop", k.stop_time);
  check_positive(v, "kinematics.t_turn", k.turn_time);
  check_positive(v, "arrival.lambda_segment", s.arrival.lambda_segment);
  if (!(s.arrival.noise_sigma >= 0.0)) v.push_back("arrival.noise_sigma: must be >= 0");
  check_positive(v, "patience.shape", s.patience.shape);
  check_positive(v, "patience.scale", s.patience.scale);
  if (!(s.exclusion_radius >= 0.0)) v.push_back("exclusion_radius: must be >= 0");

  const auto& w = s.window;
  if (!(w.end > w.start)) v.push_back("time_window: end must exceed start");
  if (!(w.segment > 0.0)) {
    v.push_back("time_window.segment: must be > 0");
  } else if (w.end > w.start) {
    const double n = (w.end - w.start) / w.segment;
    if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) {
      v.push_back("time_window.segment: must divide end - start");
    }
  }

  const auto& r = s.region;
  if (!(r.min_lat < r.max_lat) || !(r.min_lon < r.max_lon)) {
    v.push_back("region: min bounds must be below max bounds");
  }
  if (!valid_geo({r.min_lat, r.min_lon}) || !valid_geo({r.max_lat, r.max_lon})) {
    v.push_back("region: bounds must be valid coordinates");
  }
  if (!valid_geo(s.destination)) {
    v.push_back("destination: not a valid coordinate");
  } else if (!r.contains(s.destination)) {
    v.push_back("destination: must lie inside region");
  }

  if (s.lots.empty()) v.push_back("lots: at least one lot is required");
  std::set<std::string> lot_ids;
  for (const auto& lot : s.lots) {
    const std::string tag = "lot '" + lot.id + "'";
    if (lot.id.empty()) v.push_back("lots[].id: must be nonempty");
    if (!lot_ids.insert(lot.id).second) v.push_back(tag + ": id must be unique");
    if (!valid_geo(lot.location)) {
      v.push_back(tag + ": location is not a valid coordinate");
    } else if (!r.contains(lot.location)) {
      v.push_back(tag + ": location outside region bounds");
    }
    if (lot.capacity <= 0) v.push_back(tag + ": capacity must be positive");
    if (lot.floors <= 0) v.push_back(tag + ": floors must be positive");
    if (static_cast<int>(lot.floor_capacities.size()) != lot.floors) {
      v.push_back(tag + ": floor_capacities length must equal floors");
    }
    if (std::any_of(lot.floor_capacities.begin(), lot.floor_capacities.end(),
                    [](int c) { return c <= 0; })) {
      v.push_back(tag + ": every floor capacity must be positive");
    }
    const long sum = std::accumulate(lot.floor_capacities.begin(), lot.floor_capacities.end(), 0L);
    if (sum != lot.capacity) v.push_back(tag + ": floor capacities must sum to capacity");
    if (!(lot.ramp_length >= 0.0)) v.push_back(tag + ": ramp_length must be >= 0");
  }

  if (s.entries.empty()) v.push_back("entries: at least one entry is required");
  std::set<std::string> entry_ids;
  for (const auto& e : s.entries) {
    const std::string tag = "entry '" + e.id + "'";
    if (e.id.empty()) v.push_back("entries[].id: must be nonempty");
    if (!entry_ids.insert(e.id).second) v.push_back(tag + ": id must be unique");
    if (!valid_geo(e.location)) {
      v.push_back(tag + ": location is not a valid coordinate");
    } else if (!r.contains(e.location)) {
      v.push_back(tag + ": location outside region bounds");
    }
  }

  if (s.demand <= 0) v.push_back("demand_K: must be positive");
  if (!s.allow_overflow && s.demand > s.total_capacity()) {
    v.push_back("demand_K: exceeds total capacity " + std::to_string(s.total_capacity()) +
                " without allow_overflow");
  }
  if (s.mix) {
    for (auto& m : validate_mix(*s.mix)) v.push_back(std::move(m));
  }
  return v;
}

namespace {

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

// Field access with JSON-pointer context in error messages.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const json& at(const char* key) const {
    if (!j_.is_object()) fail("", "expected an object");
    auto it = j_.find(key);
    if (it == j_.end()) fail(key, "missing required field");
    return *it;
  }
  Reader child(const char* key) const { return {at(key), path_ + "/" + key}; }
  bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

  double number(const char* key) const {
    const auto& v = at(key);
    if (!v.is_number()) fail(key, "expected a number");
    return v.get<double>();
  }
  int integer(const char* key) const {
    const auto& v = at(key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<int>();
  }
  std::string string(const char* key) const {
    const auto& v = at(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }
  std::vector<Reader> array(const char* key) const {
    const auto& v = at(key);
    if (!v.is_array()) fail(key, "expected an array");
    std::vector<Reader> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.emplace_back(v[i], path_ + "/" + key + "/" + std::to_string(i));
    }
    return out;
  }
  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ParseError(0, "at " + (path_.empty() && key.empty() ? "/" : path_ + (key.empty() ? "" : "/" + key)) +
                            ": " + what);
  }

 private:
  const json& j_;
  std::string path_;
};

GeoCoord read_degrees(const Reader& r) {
  return {degrees_to_radians(r.number("lat")), degrees_to_radians(r.number("lon"))};
}

json degrees(const GeoCoord& g) {
  return {{"lat", radians_to_degrees(g.lat)}, {"lon", radians_to_degrees(g.lon)}};
}

}  // namespace

Scenario load_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }

  const Reader root(doc, "");
  Scenario s;
  s.destination = read_degrees(root.child("destination"));
  {
    const auto r = root.child("region");
    s.region = {degrees_to_radians(r.number("min_lat")), degrees_to_radians(r.number("min_lon")),
                degrees_to_radians(r.number("max_lat")), degrees_to_radians(r.number("max_lon"))};
  }
  {
    const auto k = root.child("kinematics");
    s.kinematics = {k.number("W"),      k.number("v_c"),    k.number("v_w"),
                    k.number("v_ud"),   k.number("t_stop"), k.number("t_turn")};
  }
  {
    const auto a = root.child("arrival");
    s.arrival = {a.number("lambda_segment"), a.number("noise_sigma")};
  }
  {
    const auto p = root.child("patience");
    s.patience = {p.number("shape"), p.number("scale")};
  }
  s.exclusion_radius = root.number("exclusion_radius");
  {
    const auto w = root.child("time_window");
    s.window = {w.number("start"), w.number("end"), w.number("segment")};
  }
  s.demand = root.integer("demand_K");
  if (root.has("allow_overflow")) {
    const auto& v = root.at("allow_overflow");
    if (!v.is_boolean()) root.fail("allow_overflow", "expected a boolean");
    s.allow_overflow = v.get<bool>();
  }
  if (root.has("mix")) {
    try {
      s.mix = parse_mix(root.string("mix"));
    } catch (const std::invalid_argument& e) {
      root.fail("mix", e.what());
    }
  }
  for (const auto& l : root.array("lots")) {
    ParkingLot lot;
    lot.id = l.string("id");
    lot.location = read_degrees(l);
    lot.capacity = l.integer("capacity");
    lot.floors = l.integer("floors");
    const auto& fc = l.at("floor_capacities");
    if (!fc.is_array()) l.fail("floor_capacities", "expected an array");
    for (const auto& c : fc) {
      if (!c.is_number_integer()) l.fail("floor_capacities", "expected integers");
      lot.floor_capacities.push_back(c.get<int>());
    }
    lot.ramp_length = l.number("ramp_length");
    s.lots.push_back(std::move(lot));
  }
  for (const auto& e : root.array("entries")) {
    s.entries.push_back({e.string("id"), read_degrees(e)});
  }

  if (auto violations = validate_scenario(s); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || std::filesystem::is_directory(path)) {
    throw std::runtime_error("cannot open scenario file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string save_scenario(const Scenario& s) {
  json doc;
  doc["destination"] = degrees(s.destination);
  doc["region"] = {{"min_lat", radians_to_degrees(s.region.min_lat)},
                   {"min_lon", radians_to_degrees(s.region.min_lon)},
                   {"max_lat", radians_to_degrees(s.region.max_lat)},
                   {"max_lon", radians_to_degrees(s.region.max_lon)}};
  const auto& k = s.kinematics;
  doc["kinematics"] = {{"W", k.spot_width},    {"v_c", k.cruise_speed}, {"v_w", k.walk_speed},
                       {"v_ud", k.ramp_speed}, {"t_stop", k.stop_time}, {"t_turn", k.turn_time}};
  doc["arrival"] = {{"lambda_segment", s.arrival.lambda_segment},
                    {"noise_sigma", s.arrival.noise_sigma}};
  doc["patience"] = {{"shape", s.patience.shape}, {"scale", s.patience.scale}};
  doc["exclusion_radius"] = s.exclusion_radius;
  doc["time_window"] = {{"start", s.window.start}, {"end", s.window.end}, {"segment", s.window.segment}};
  doc["demand_K"] = s.demand;
  if (s.allow_overflow) doc["allow_overflow"] = true;
  if (s.mix) doc["mix"] = format_mix(*s.mix);
  doc["lots"] = json::array();
  for (const auto& lot : s.lots) {
    json l = degrees(lot.location);
    l["id"] = lot.id;
    l["capacity"] = lot.capacity;
    l["floors"] = lot.floors;
    l["floor_capacities"] = lot.floor_capacities;
    l["ramp_length"] = lot.ramp_length;
    doc["lots"].push_back(std::move(l));
  }
  doc["entries"] = json::array();
  for (const auto& e : s.entries) {
    json j = degrees(e.location);
    j["id"] = e.id;
    doc["entries"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

void save_scenario_file(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write scenario file " + path.string());
  out << save_scenario(s);
  if (!out) throw std::runtime_error("failed writing scenario file " + path.string());
}

Region berkeley_region() {
  return {degrees_to_radians(37.8620), degrees_to_radians(-122.2660),
          degrees_to_radians(37.8800), degrees_to_radians(-122.2400)};
}

GeoCoord berkeley_destination() {
  return {degrees_to_radians(37.8713), degrees_to_radians(-122.2508)};
}

namespace {

// Largest-remainder split of `total` into parts proportional to `weights`,
// each part at least `floor_each`.
std::vector<int> partition(int total, const std::vector<double>& weights, int floor_each) {
  const int n = static_cast<int>(weights.size());
  std::vector<int> parts(n, floor_each);
  const int spare = total - floor_each * n;
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::pair<double, int>> remainders;
  int given = 0;
  for (int i = 0; i < n; ++i) {
    const double share = spare * weights[i] / wsum;
    const int whole = static_cast<int>(std::floor(share));
    parts[i] += whole;
    given += whole;
    remainders.push_back({share - whole, i});
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; i < spare - given; ++i) ++parts[remainders[i % n].second];
  return parts;
}

std::string numbered(const char* prefix, int i, int width) {
  std::string digits = std::to_string(i);
  if (static_cast<int>(digits.size()) < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

}  // namespace

Scenario synth_scenario(const SynthParams& p) {
  if (p.n_lots < 1) throw std::invalid_argument("synth: n_lots must be >= 1");
  if (p.n_entries < 1) throw std::invalid_argument("synth: n_entries must be >= 1");
  if (p.total_capacity < p.n_lots) {
    throw std::invalid_argument("synth: total_capacity must be at least n_lots");
  }
  const auto& r = p.region;
  if (!(r.min_lat < r.max_lat) || !(r.min_lon < r.max_lon)) {
    throw std::invalid_argument("synth: empty region");
  }

  Rng rng = make_rng(p.seed, 0);
  std::uniform_real_distribution<double> lat_dist(r.min_lat, r.max_lat);
  std::uniform_real_distribution<double> lon_dist(r.min_lon, r.max_lon);
  std::uniform_real_distribution<double> weight_dist(0.5, 1.5);
  std::uniform_real_distribution<double> ramp_dist(20.0, 40.0);
  std::uniform_int_distribution<int> floor_dist(1, 3);

  Scenario s;
  s.destination = p.destination;
  s.region = r;
  s.kinematics = p.kinematics;
  s.arrival = p.arrival;
  s.patience = p.patience;
  s.exclusion_radius = p.exclusion_radius;
  s.window = p.window;

  std::vector<double> weights;
  const int width = p.n_lots >= 100 ? 3 : 2;
  for (int i = 0; i < p.n_lots; ++i) {
    ParkingLot lot;
    lot.id = numbered("L", i + 1, width);
    lot.location = {lat_dist(rng), lon_dist(rng)};
    lot.floors = floor_dist(rng);
    lot.ramp_length = ramp_dist(rng);
    weights.push_back(weight_dist(rng));
    s.lots.push_back(std::move(lot));
  }
  const auto caps = partition(p.total_capacity, weights, 1);
  for (int i = 0; i < p.n_lots; ++i) {
    auto& lot = s.lots[i];
    lot.capacity = caps[i];
    lot.floors = std::min(lot.floors, lot.capacity);
    if (lot.floors == 1) lot.ramp_length = 0.0;
    lot.floor_capacities = partition(lot.capacity, std::vector<double>(lot.floors, 1.0), 1);
  }

  // Entries spread along the boundary perimeter, in lat/lon units.
  const double h = r.max_lat - r.min_lat;
  const double w = r.max_lon - r.min_lon;
  std::uniform_real_distribution<double> perimeter_dist(0.0, 2.0 * (h + w));
  for (int i = 0; i < p.n_entries; ++i) {
    double t = perimeter_dist(rng);
    GeoCoord g;
    if (t < w) {
      g = {r.min_lat, r.min_lon + t};
    } else if ((t -= w) < h) {
      g = {r.min_lat + t, r.max_lon};
    } else if ((t -= h) < w) {
      g = {r.max_lat, r.max_lon - t};
    } else {
      t -= w;
      g = {r.max_lat - std::min(t, h), r.min_lon};
    }
    s.entries.push_back({numbered("E", i + 1, 2), g});
  }

  s.demand = p.demand.value_or(p.total_capacity);
  s.allow_overflow = s.demand > p.total_capacity;
  return s;
}

}  // namespace parkassign
