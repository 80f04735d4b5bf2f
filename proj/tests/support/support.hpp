// Shared helpers for the C++ test binaries: fixture paths, scratch
// directories, scenario builders and independent oracles.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <unistd.h>

namespace udtn::testing {

namespace fs = std::filesystem;

inline fs::path fixture(const std::string& name) { return fs::path(UDTN_FIXTURE_DIR) / name; }
inline fs::path sample_dir() { return fs::path(UDTN_SAMPLE_DIR); }

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag = "t") {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("udtn-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

// Every regular file under root (relative path -> bytes).
inline std::map<std::string, std::string> snapshot_tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = slurp(e.path());
  }
  return out;
}

// ---- independent geodesy -------------------------------------------------

constexpr double kEarthKm = 6371.0;

inline double oracle_haversine(double lat1, double lon1, double lat2, double lon2) {
  const double r = M_PI / 180.0;
  const double a = std::pow(std::sin((lat2 - lat1) * r / 2), 2) +
                   std::cos(lat1 * r) * std::cos(lat2 * r) * std::pow(std::sin((lon2 - lon1) * r / 2), 2);
  return 2 * kEarthKm * std::atan2(std::sqrt(a), std::sqrt(1 - a));
}

// ---- independent OSM reader + brute-force splitter ------------------------

struct OracleOsm {
  std::map<std::int64_t, std::pair<double, double>> nodes;
  struct W {
    std::int64_t id;
    std::vector<std::int64_t> refs;
    std::string road;
  };
  std::vector<W> ways;
};

// Regex scan; only understands the plain layout used by the fixtures.
inline OracleOsm oracle_read_osm(const std::string& xml) {
  OracleOsm osm;
  static const std::regex node_re(R"re(<node id="(-?\d+)" lat="([-0-9.]+)" lon="([-0-9.]+)")re");
  for (std::sregex_iterator it(xml.begin(), xml.end(), node_re), end; it != end; ++it) {
    osm.nodes[std::stoll((*it)[1])] = {std::stod((*it)[2]), std::stod((*it)[3])};
  }
  static const std::regex way_re(R"re(<way id="(-?\d+)">([\s\S]*?)</way>)re");
  static const std::regex nd_re(R"re(<nd ref="(-?\d+)"/>)re");
  static const std::regex tag_re(R"re(<tag k="highway" v="([^"]*)"/>)re");
  for (std::sregex_iterator it(xml.begin(), xml.end(), way_re), end; it != end; ++it) {
    OracleOsm::W w{std::stoll((*it)[1]), {}, ""};
    const std::string body = (*it)[2];
    for (std::sregex_iterator n(body.begin(), body.end(), nd_re); n != end; ++n) w.refs.push_back(std::stoll((*n)[1]));
    std::smatch t;
    if (std::regex_search(body, t, tag_re)) w.road = t[1];
    osm.ways.push_back(std::move(w));
  }
  return osm;
}

struct GoldenSegment {
  std::int64_t id;
  std::vector<std::int64_t> nodes;
  int type;
  double length_km;

  bool operator<(const GoldenSegment& o) const { return id < o.id; }
};

// Splits each kept way at every interior node that also occurs anywhere else
// (another way, or elsewhere in the same way), by exhaustive comparison.
inline std::vector<GoldenSegment> brute_force_split(const OracleOsm& osm, const std::map<std::string, int>& types) {
  std::vector<const OracleOsm::W*> kept;
  for (const auto& w : osm.ways) {
    if (types.count(w.road) && w.refs.size() >= 2) kept.push_back(&w);
  }
  const auto shared = [&](const OracleOsm::W* self, std::size_t at) {
    for (const auto* other : kept) {
      for (std::size_t j = 0; j < other->refs.size(); ++j) {
        if (other == self && j == at) continue;
        if (other->refs[j] == self->refs[at]) return true;
      }
    }
    return false;
  };
  std::vector<GoldenSegment> out;
  for (const auto* w : kept) {
    std::vector<std::size_t> cuts{0};
    for (std::size_t i = 1; i + 1 < w->refs.size(); ++i) {
      if (shared(w, i)) cuts.push_back(i);
    }
    cuts.push_back(w->refs.size() - 1);
    const bool split = cuts.size() > 2;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      GoldenSegment s{split ? w->id * 1000 + static_cast<std::int64_t>(k) + 1 : w->id, {}, types.at(w->road), 0.0};
      for (std::size_t i = cuts[k]; i <= cuts[k + 1]; ++i) s.nodes.push_back(w->refs[i]);
      for (std::size_t i = 1; i < s.nodes.size(); ++i) {
        const auto& a = osm.nodes.at(s.nodes[i - 1]);
        const auto& b = osm.nodes.at(s.nodes[i]);
        s.length_km += oracle_haversine(a.first, a.second, b.first, b.second);
      }
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- scenario builders ---------------------------------------------------

inline const std::map<std::string, int>& three_types() {
  static const std::map<std::string, int> t{{"footpath", 1}, {"remote", 2}, {"highway", 3}};
  return t;
}

// rows x cols lattice; horizontal street r gets road_for_row(r), vertical
// street c gets road_for_col(c). Node (r, c) has id 1 + r*cols + c.
template <typename RowFn, typename ColFn>
std::string grid_osm(int rows, int cols, double spacing_deg, RowFn road_for_row, ColFn road_for_col) {
  std::ostringstream out;
  out.precision(10);
  out << "<?xml version=\"1.0\"?>\n<osm version=\"0.6\">\n";
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      out << "  <node id=\"" << 1 + r * cols + c << "\" lat=\"" << 19.0 + r * spacing_deg << "\" lon=\""
          << 72.8 + c * spacing_deg << "\"/>\n";
    }
  }
  int wid = 100;
  const auto way = [&](const std::vector<int>& refs, const std::string& road) {
    out << "  <way id=\"" << wid++ << "\">\n";
    for (int ref : refs) out << "    <nd ref=\"" << ref << "\"/>\n";
    out << "    <tag k=\"highway\" v=\"" << road << "\"/>\n  </way>\n";
  };
  for (int r = 0; r < rows; ++r) {
    std::vector<int> refs;
    for (int c = 0; c < cols; ++c) refs.push_back(1 + r * cols + c);
    way(refs, road_for_row(r));
  }
  for (int c = 0; c < cols; ++c) {
    std::vector<int> refs;
    for (int r = 0; r < rows; ++r) refs.push_back(1 + r * cols + c);
    way(refs, road_for_col(c));
  }
  out << "</osm>\n";
  return out.str();
}

struct GroupText {
  std::string id, label, paths;
  int hosts = 1;
  double tx_m = 50;
  double speed = 0;
  std::string movement = "Stationary";
  std::string protocol = "Epidemic";
  double delay_s = 0;
};

inline std::string scenario_text(const std::string& map, const std::string& reports, double hours,
                                 const std::string& rate, const std::vector<GroupText>& groups, int sims = 1,
                                 const std::string& extra_general = "") {
  std::ostringstream out;
  out << "Simulation_Name = test\nNo_of_Simulations = " << sims << "\nSimulation_Time = " << hours
      << "\nMap = " << map << "\nReport_Directory = " << reports
      << "\nPath_Types = {footpath: 1, remote: 2, highway: 3}\nRandom_Msg_Gen_Parameter = " << rate
      << "\nNo_of_Hosts_Groups = " << groups.size() << '\n'
      << extra_general;
  for (const auto& g : groups) {
    out << "\nGroup_ID = " << g.id << "\nLabel = " << g.label << "\nPaths = " << g.paths << "\nNo_of_Hosts = "
        << g.hosts << "\nTX_Range = " << g.tx_m << "\nSpeed = " << g.speed
        << "\nMobile = " << (g.movement == "Stationary" ? "False" : "True") << "\nMovement = " << g.movement
        << "\nJunction_Delay = " << g.delay_s << "\nProtocol = " << g.protocol << '\n';
  }
  return out.str();
}

}  // namespace udtn::testing
