// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "support.hpp"
#include "udtn/engine.hpp"
#include "udtn/error.hpp"

using namespace udtn;
using namespace udtn::testing;

namespace {

class Verdict {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ |= !ok;
  }
  bool failed() const { return failed_; }
  std::size_t checks() const { return checks_; }
  std::string detail() const {
    std::string out;
    for (const auto& f : failures_) out += "\n      " + f;
    return out;
  }

 private:
  bool failed_ = false;
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<void(Verdict&)> body;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

// ---------------------------------------------------------------- 1

const std::vector<std::string> kFixtures{"cross.osm", "tjunction.osm", "parallel.osm", "endpoint.osm",
                                         "nointersect.osm"};

double total_length(const MapTables& t) {
  double s = 0;
  for (const auto& [id, w] : t.ways) s += w.length_km;
  return s;
}

void normalization_suite(Verdict& v) {
  for (const auto& name : kFixtures) {
    const MapTables raw = parse_osm(fixture(name), three_types());
    const MapTables norm = normalize_map(raw);
    const auto golden = brute_force_split(oracle_read_osm(slurp(fixture(name))), three_types());
    bool same = norm.ways.size() == golden.size();
    auto it = norm.ways.begin();
    for (std::size_t i = 0; same && i < golden.size(); ++i, ++it) {
      const Way& w = it->second;
      same = w.id == golden[i].id && w.nodes == golden[i].nodes && w.type == golden[i].type &&
             std::abs(w.length_km - golden[i].length_km) <= 1e-9 * golden[i].length_km;
    }
    v.expect(same, name + ": edge list differs from the brute-force splitter");
    v.expect(dump_ways(normalize_map(norm)) == dump_ways(norm), name + ": not idempotent");
    v.expect(std::abs(total_length(norm) - total_length(raw)) <= 1e-9 * total_length(raw),
             name + ": length not conserved");
    v.expect(norm.nodes.size() == raw.nodes.size(), name + ": node set changed");
  }
}

// ---------------------------------------------------------------- 2

void geodesy_suite(Verdict& v) {
  const double pi_r = std::numbers::pi * 6371.0;
  const auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  v.expect(rel(geodesic_distance({0, 0}, {0, 180}), pi_r) < 1e-6, "antipodal distance != pi R");
  v.expect(rel(geodesic_distance({0, 0}, {0, 1}), pi_r / 180) < 1e-6, "equator degree != pi R / 180");
  v.expect(std::abs(geodesic_distance({0, 0}, {0, 1}) - 111.195) < 1e-3, "equator degree != 111.195 km");

  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> lat(-89, 89), lon(-179, 179);
  for (int i = 0; i < 1000; ++i) {
    const GeoPoint a{lat(gen), lon(gen)}, b{lat(gen), lon(gen)}, c{lat(gen), lon(gen)};
    const double ab = geodesic_distance(a, b);
    v.expect(ab == geodesic_distance(b, a), "asymmetric distance");
    v.expect(geodesic_distance(a, a) == 0 && ab > 0, "identity of indiscernibles");
    v.expect(geodesic_distance(a, c) <= ab + geodesic_distance(b, c) + 1e-9, "triangle inequality");
  }

  const auto spec = make_projection({18.9, 72.7, 19.2, 73.1}, {800, 1200});
  std::uniform_real_distribution<double> plat(18.8, 19.3), plon(72.6, 73.2);
  for (int i = 0; i < 1000; ++i) {
    const GeoPoint p{plat(gen), plon(gen)};
    const GeoPoint q = projected_to_geo(geo_to_projected(p, spec), spec);
    v.expect(rel(q.lat, p.lat) < 1e-9 && rel(q.lon, p.lon) < 1e-9, "projection round trip");
  }
}

// ---------------------------------------------------------------- 3

// 3x4 lattice (17 edges) plus three diagonal footpaths = 20 edges of all
// three road classes. Spacing ~22 m so an edge takes a couple of ticks.
std::string mobility_map() {
  const std::vector<std::string> rows{"highway", "remote", "highway"};
  const std::vector<std::string> cols{"footpath", "remote", "footpath", "highway"};
  std::string xml = grid_osm(3, 4, 0.0002, [&](int r) { return rows[r]; }, [&](int c) { return cols[c]; });
  const std::string diagonals =
      "  <way id=\"900\"><nd ref=\"1\"/><nd ref=\"6\"/><tag k=\"highway\" v=\"footpath\"/></way>\n"
      "  <way id=\"901\"><nd ref=\"7\"/><nd ref=\"12\"/><tag k=\"highway\" v=\"footpath\"/></way>\n"
      "  <way id=\"902\"><nd ref=\"4\"/><nd ref=\"7\"/><tag k=\"highway\" v=\"footpath\"/></way>\n";
  xml.insert(xml.rfind("</osm>"), diagonals);
  return xml;
}

// Edges of allowed type reachable from `start` over allowed edges.
std::set<WayId> allowed_component(const RoadGraph& g, VertexId start, const RoadTypeSet& allowed) {
  std::set<WayId> ways;
  std::set<VertexId> seen{start};
  std::queue<VertexId> q;
  q.push(start);
  while (!q.empty()) {
    const VertexId u = q.front();
    q.pop();
    for (const auto& a : neighbors(g, u, allowed)) {
      ways.insert(g.edge(a.edge).way_id);
      if (seen.insert(a.vertex).second) q.push(a.vertex);
    }
  }
  return ways;
}

void mobility_suite(Verdict& v) {
  const RoadGraph g = build_graph(normalize_map(parse_osm_string(mobility_map(), three_types())));
  v.expect(g.edges().size() == 20, "mobility graph must have 20 edges, has " + std::to_string(g.edges().size()));
  const std::int64_t budget = 50 * static_cast<std::int64_t>(g.edges().size());
  const double tick_s = 1.0;
  const double step_km = 0.011;

  const std::vector<std::string> models{"Stationary", "SimpleRandom", "PathType", "PathMemory", "Restricted", "Wait"};
  std::size_t restricted_audited = 0, wait_holds = 0, releases = 0;
  for (const auto& model : models) {
    const bool typed = model != "Stationary" && model != "SimpleRandom";
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(seed * 7919 + 1);
      std::vector<AgentState> agents;
      const auto add = [&](const std::string& id, const std::string& m, RoadTypeSet allowed, int level,
                           const std::string& protocol) {
        AgentState a;
        a.obj_id = id;
        a.movement = MovementRegistry::instance().create(m);
        a.allowed_types = std::move(allowed);
        a.highway_type = 3;
        a.speed_kmh = a.movement->mobile() ? step_km * 3600 / tick_s : 0;
        a.step_km = a.movement->mobile() ? step_km : 0;
        a.protocol = ProtocolRegistry::instance().create(protocol);
        a.level = level;
        a.tx_range_km = 0.012;
        agents.push_back(std::move(a));
      };
      for (int i = 1; i <= 3; ++i) add("A" + std::to_string(i), model, {2, 3}, 1, "SuperiorOnly");
      // Four-wheelers release carrying agents when they meet.
      for (int i = 1; i <= 2; ++i) add("Z" + std::to_string(i), "PathType", {3}, 0, "SuperiorOnly");
      for (auto& a : agents) place_agent(a, g, compute_initial_node(*a.movement, g, a.allowed_types, rng));

      std::vector<Decision> decisions;
      std::map<std::string, std::set<WayId>> target;
      for (const auto& a : agents) target[a.obj_id] = allowed_component(g, a.next_node, a.allowed_types);
      std::map<std::string, std::int64_t> covered_at;
      int msg = 0;

      for (std::int64_t tick = 0; tick < budget; ++tick) {
        const double now = static_cast<double>(tick) * tick_s / 3600;
        if (tick % 150 == 0) {
          for (int i = 0; i < 3; ++i) {
            const std::string id = "M" + std::to_string(++msg);
            agents[static_cast<std::size_t>(i)].receive(Message{id, {1, 2, 3, 4, 5}, "X", now}, "X", now);
          }
        }
        const MoveContext ctx{g, rng, tick, now, tick_s, &decisions};
        for (auto& a : agents) {
          const GeoPoint before = a.curr_geo_pos;
          const bool flagged = a.wait_flag;
          update_position(a, ctx);
          v.expect(geodesic_distance(before, a.curr_geo_pos) <= a.step_km * (1 + 1e-9) + 1e-12,
                   model + ": " + a.obj_id + " jumped at tick " + std::to_string(tick));
          if (!a.mobile()) v.expect(a.curr_geo_pos == before, model + ": stationary agent moved");
          if (flagged) {
            ++wait_holds;
            v.expect(a.curr_geo_pos == before, model + ": waiting agent moved");
            v.expect(a.wait_flag, model + ": wait flag cleared by the mobility layer");
          }
          v.expect(a.wait_flag == false || a.movement->name() == "Wait", "wait flag on a non-wait model");
        }
        const Clock clock{tick, now};
        for (auto& a : agents) {
          const bool flagged = a.wait_flag;
          execute_protocol(a, agents, clock);
          releases += flagged && !a.wait_flag;
        }
        for (const auto& a : agents) {
          if (a.movement->name() != "PathMemory" || covered_at.count(a.obj_id)) continue;
          const std::set<WayId> seen(a.ways_visited.begin(), a.ways_visited.end());
          if (std::includes(seen.begin(), seen.end(), target[a.obj_id].begin(), target[a.obj_id].end())) {
            covered_at[a.obj_id] = tick;
          }
        }
      }

      for (const auto& a : agents) {
        if (a.movement->name() == "PathMemory") {
          v.expect(covered_at.count(a.obj_id) == 1,
                   "PathMemory " + a.obj_id + " seed " + std::to_string(seed) + " did not cover its roads");
        }
        if (typed || a.obj_id[0] == 'Z') {
          for (WayId w : a.ways_visited) {
            const auto& e = *std::find_if(g.edges().begin(), g.edges().end(),
                                          [&](const Edge& x) { return x.way_id == w; });
            v.expect(a.allowed_types.count(e.type) == 1, a.obj_id + " used a disallowed road");
          }
        }
      }
      for (const auto& d : decisions) {
        const AgentState& who = *std::find_if(agents.begin(), agents.end(),
                                              [&](const AgentState& a) { return a.obj_id == d.obj_id; });
        if (who.movement->name() != "Restricted" || !d.carrying) continue;
        const bool highway_available = std::any_of(d.candidates.begin(), d.candidates.end(),
                                                   [&](const Adjacent& c) { return g.edge(c.edge).type == 3; });
        if (!highway_available) continue;
        ++restricted_audited;
        v.expect(d.chosen_edge && g.edge(*d.chosen_edge).type == 3, "restricted agent left the highway");
      }
    }
  }
  v.expect(restricted_audited > 0, "no restricted decisions were audited");
  v.expect(wait_holds > 0, "no wait agent was ever parked");
  v.expect(releases > 0, "no wait agent was ever released");
}

// ---------------------------------------------------------------- shared scenario

// Three-level hierarchy on the sample grid: pedestrians/sensors level 2,
// two-wheelers level 1, four-wheelers and depot level 0.
fs::path hierarchy_scenario(const TempDir& dir, double hours) {
  fs::copy_file(sample_dir() / "map.osm", dir / "map.osm", fs::copy_options::overwrite_existing);
  const fs::path cfg = dir / "sim.config";
  spit(cfg, scenario_text("map.osm", "reports", hours, "[6, 0.5]",
                          {{"sensors", "S", "[1]", 3, 60},
                           {"pedestrians", "P", "[1, 2, 3]", 2, 60, 5, "PathMemory", "Epidemic", 5},
                           {"two_wheelers", "B", "[2, 3]", 2, 60, 25, "PathType", "Epidemic", 3},
                           {"four_wheelers", "C", "[3]", 2, 60, 30, "SimpleRandom", "Epidemic"},
                           {"depot", "D", "[3]", 1, 60, 0, "Stationary", "Depot"}},
                          1, "Event_Duration = 0.75\n"));
  return cfg;
}

Scenario with_protocol(Scenario s, const std::string& protocol) {
  for (auto& g : s.groups)
    if (g.protocol != "Depot") g.protocol = protocol;
  return s;
}

// ---------------------------------------------------------------- 4

void protocol_suite(Verdict& v) {
  {
    std::vector<AgentState> agents(3);
    const char* ids[] = {"A", "B", "C"};
    for (int i = 0; i < 3; ++i) {
      agents[i].obj_id = ids[i];
      agents[i].protocol = ProtocolRegistry::instance().create("Epidemic");
      agents[i].tx_range_km = 0.01;
      agents[i].receive(Message{std::string("m") + ids[i], {1}, ids[i], 0}, ids[i], 0);
    }
    for (std::int64_t t = 0; t < 2; ++t)
      for (auto& a : agents) execute_protocol(a, agents, Clock{t, 0});
    for (const auto& a : agents) v.expect(a.held_ids.size() == 3, "epidemic buffers did not converge in 2 ticks");
  }

  TempDir dir("proto");
  const Scenario base = load_config(hierarchy_scenario(dir, 0.5));
  for (const std::string protocol : {"Epidemic", "SuperiorOnly", "SuperiorPeer"}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      SimulationContext ctx = init_sim(with_protocol(base, protocol), seed);
      finish_run(ctx);
      std::map<std::string, int> level;
      std::set<std::string> depots;
      for (const auto& a : ctx.agents) {
        level[a.obj_id] = a.level;
        if (a.protocol->depot()) depots.insert(a.obj_id);
        std::set<std::string> unique;
        for (const auto& b : a.buffer) unique.insert(b.message.msg_id);
        v.expect(unique.size() == a.buffer.size(), "duplicate msg_id in " + a.obj_id);
      }
      v.expect(!ctx.transfers.empty(), protocol + ": no transfers at all");
      for (const auto& t : ctx.transfers) {
        v.expect(depots.count(t.sender) == 0, "depot " + t.sender + " sent data");
        if (protocol == "SuperiorOnly") v.expect(level[t.sender] > level[t.receiver], "SuperiorOnly flowed sideways/down");
        if (protocol == "SuperiorPeer") v.expect(level[t.sender] >= level[t.receiver], "SuperiorPeer flowed down");
      }
    }
  }
}

// ---------------------------------------------------------------- 5

std::string ordering_note;

void ordering_check(Verdict& v) {
  TempDir dir("order");
  const Scenario base = load_config(hierarchy_scenario(dir, 1.0));
  std::map<std::string, double> mean;
  const std::vector<std::string> order{"Epidemic", "SuperiorPeer", "SuperiorOnly"};
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    std::vector<std::set<std::pair<std::string, std::string>>> pairs;
    std::vector<std::set<std::string>> delivered;
    for (const auto& protocol : order) {
      SimulationContext ctx = init_sim(with_protocol(base, protocol), seed);
      v.expect(ctx.agents.size() == 10, "ordering scenario must have 10 agents");
      const RunSummary s = finish_run(ctx);
      mean[protocol] += s.delivery_ratio / 20.0;
      std::set<std::pair<std::string, std::string>> held;
      for (const auto& a : ctx.agents)
        for (const auto& id : a.held_ids) held.insert({id, a.obj_id});
      pairs.push_back(std::move(held));
      std::set<std::string> got;
      for (const auto& e : ctx.events)
        if (e.delivered()) got.insert(e.e_id);
      delivered.push_back(std::move(got));
    }
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      v.expect(std::includes(pairs[i].begin(), pairs[i].end(), pairs[i + 1].begin(), pairs[i + 1].end()),
               order[i] + " (message, node) set does not contain " + order[i + 1] + "'s, seed " + std::to_string(seed));
      v.expect(std::includes(delivered[i].begin(), delivered[i].end(), delivered[i + 1].begin(),
                             delivered[i + 1].end()),
               order[i] + " delivered set does not contain " + order[i + 1] + "'s");
    }
  }
  v.expect(mean["Epidemic"] >= mean["SuperiorPeer"] && mean["SuperiorPeer"] >= mean["SuperiorOnly"],
           "mean delivery ratio ordering violated");
  ordering_note = "E=" + fmt("%.3f", mean["Epidemic"]) + " SP=" + fmt("%.3f", mean["SuperiorPeer"]) +
                  " SO=" + fmt("%.3f", mean["SuperiorOnly"]);
}

// ---------------------------------------------------------------- 6

void determinism(Verdict& v) {
  TempDir dir("det");
  for (const char* f : {"sim.config", "map.osm", "envt_params.in", "group_params.in"}) {
    fs::copy_file(sample_dir() / f, dir / f);
  }
  const auto invoke = [&](const std::string& seed, const std::string& out) {
    std::vector<std::string> args{"udtnsim", "--config", (dir / "sim.config").string(), "--seed", seed,
                                  "--report-dir", (dir / out).string(), "--quiet"};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    v.expect(cli_main(static_cast<int>(argv.size()), argv.data()) == 0, "cli run failed");
    return snapshot_tree(dir / out);
  };
  const auto a = invoke("42", "a");
  const auto b = invoke("42", "b");
  const auto c = invoke("43", "c");
  v.expect(!a.empty(), "no report files written");
  v.expect(a == b, "same seed produced different report trees");
  v.expect(a != c, "different seeds produced identical report trees");
}

// ---------------------------------------------------------------- 7

void events_suite(Verdict& v) {
  std::mt19937_64 gen(31337);
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(gen() % 8);
    const double n = 0.25 * static_cast<double>(1 + gen() % 16);
    const double horizon = 0.125 * static_cast<double>(gen() % 120);
    const auto times = schedule_events({m, n}, horizon, rng);
    // Brute-force window counter.
    std::map<long, long> per_window;
    for (double t : times) {
      v.expect(t >= 0 && t < horizon, "event outside the horizon");
      ++per_window[static_cast<long>(std::floor(t / n))];
    }
    long full = 0;
    while ((full + 1) * n <= horizon) ++full;
    const double rest = horizon - static_cast<double>(full) * n;
    const long tail = rest > 0 ? static_cast<long>(std::floor(m * rest / n + 1e-9)) : 0;
    for (long k = 0; k < full; ++k) v.expect(per_window[k] == m, "full window count");
    v.expect(per_window[full] == tail, "partial window count");
    v.expect(static_cast<long>(times.size()) == full * m + tail, "total count");
    v.expect(std::is_sorted(times.begin(), times.end()), "schedule not sorted");
  }
  v.expect(GeneralParams{}.event_payload_bytes == 5 && kDefaultPayloadBytes == 5, "default payload size");
  const Scenario s = load_config(sample_dir() / "sim.config");
  v.expect(s.general.event_payload_bytes == 5, "sample scenario payload default");
  AgentState host;
  host.obj_id = "S1";
  std::vector<AgentState*> hosts{&host};
  v.expect(create_event(1, 0, hosts, 1, s.general.event_payload_bytes, rng, 0).data.size() == 5,
           "created payload is not 5 bytes");
}

// ---------------------------------------------------------------- 8

void report_round_trip(Verdict& v) {
  TempDir dir("rt");
  for (const char* f : {"sim.config", "map.osm"}) fs::copy_file(sample_dir() / f, dir / f);
  RunOverrides o;
  o.report_dir = dir / "out";
  SimulationContext ctx = init_sim(dir / "sim.config", 5, 0, o);
  const RunSummary summary = run(ctx);
  const fs::path base = dir / "out";
  const auto close = [](double a, double b) { return std::abs(a - b) * 3600 < 1.0 + 1e-6; };

  for (const auto& a : ctx.agents) {
    const auto contacts = read_contacts(base / a.obj_id / "contacts_0.dat");
    bool ok = contacts.size() == a.contact_log.size();
    for (std::size_t i = 0; ok && i < contacts.size(); ++i) {
      ok = contacts[i].neighbor == a.contact_log[i].neighbor && close(contacts[i].entry_h, a.contact_log[i].entry_h) &&
           close(contacts[i].exit_h, a.contact_log[i].exit_h);
    }
    v.expect(ok, a.obj_id + ": contacts differ");
    v.expect(read_ways(base / a.obj_id / "ways_0.dat") == a.ways_visited, a.obj_id + ": ways differ");
    const auto messages = read_messages(base / a.obj_id / "messages_0.dat");
    ok = messages.size() == a.buffer.size();
    for (std::size_t i = 0; ok && i < messages.size(); ++i) {
      ok = messages[i].msg_id == a.buffer[i].message.msg_id && messages[i].received_from == a.buffer[i].sender &&
           close(messages[i].received_h, a.buffer[i].received_h);
    }
    v.expect(ok, a.obj_id + ": messages differ");
    v.expect(read_agent_summary(base / a.obj_id / "summary_0.dat") == summarize_agent(a), a.obj_id + ": summary");
  }
  v.expect(!ctx.events.empty(), "sample run generated no events");
  for (const auto& e : ctx.events) {
    const EventRecord r = read_event(base / "events" / (e.e_id + "_0.dat"));
    v.expect(r.e_id == e.e_id && r.assigned_to == e.assigned_to && close(r.time_h, e.time_h) &&
                 close(r.expiry_h, e.expiry_h) && r.expired == e.expired && r.delivered == e.delivered() &&
                 r.data == e.data && r.handler_trace == e.handler_trace,
             e.e_id + ": event record differs");
    if (e.delivered()) v.expect(r.delivered_h && close(*r.delivered_h, *e.delivered_h), e.e_id + ": delivery time");
  }
  v.expect(read_run_summary(base / "summary_0.dat") == summary, "run summary differs");
  v.expect(summary.delivery_ratio == delivery_ratio_from_event_logs(base, 0), "delivery ratio not recomputable");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "normalization suite", 1.0, normalization_suite},
      {2, "geodesy suite", 1.0, geodesy_suite},
      {3, "mobility invariant suite", 30.0, mobility_suite},
      {4, "protocol suite", 10.0, protocol_suite},
      {5, "protocol ordering check", 120.0, ordering_check},
      {6, "determinism", 60.0, determinism},
      {7, "event scheduling", 5.0, events_suite},
      {8, "report round trip", 5.0, report_round_trip},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.expect(secs < c.limit_s, "runtime " + fmt("%.2f", secs) + " s over the " + fmt("%.0f", c.limit_s) + " s limit");
    const bool ok = !v.failed();
    failed += !ok;
    std::printf("%s  %d. %-26s %7.2f s  (%zu checks)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                v.checks(), c.id == 5 && !ordering_note.empty() ? ("  " + ordering_note).c_str() : "",
                v.detail().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
