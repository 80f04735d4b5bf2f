#include "udtn/map_ingest.hpp"

#include <expat.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <set>
#include <sstream>

#include "udtn/error.hpp"

namespace udtn {

namespace {

template <typename T>
std::optional<T> parse_number(const char* text) {
  if (text == nullptr) return std::nullopt;
  const char* end = text + std::strlen(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

const char* attribute(const XML_Char** attrs, const char* name) {
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    if (std::strcmp(attrs[i], name) == 0) return attrs[i + 1];
  }
  return nullptr;
}

struct OsmReader {
  XML_Parser parser = nullptr;
  std::map<NodeId, GeoNode> nodes;
  std::vector<RawWay> ways;
  std::optional<RawWay> current;
  std::optional<Error> failure;

  void fail(const std::string& what) {
    if (!failure) {
      failure = Error(ErrorCode::XmlSyntaxError,
                      "line " + std::to_string(XML_GetCurrentLineNumber(parser)) + ": " + what);
    }
    XML_StopParser(parser, XML_FALSE);
  }

  void start(const char* name, const XML_Char** attrs) {
    if (std::strcmp(name, "node") == 0) {
      const auto id = parse_number<NodeId>(attribute(attrs, "id"));
      const auto lat = parse_number<double>(attribute(attrs, "lat"));
      const auto lon = parse_number<double>(attribute(attrs, "lon"));
      if (!id || !lat || !lon) return fail("<node> needs numeric id, lat and lon");
      if (*lat < -90.0 || *lat > 90.0 || *lon < -180.0 || *lon > 180.0) {
        return fail("<node> coordinate out of range");
      }
      nodes[*id] = GeoNode{*id, {*lat, *lon}, std::nullopt, {}};
    } else if (std::strcmp(name, "way") == 0) {
      const auto id = parse_number<WayId>(attribute(attrs, "id"));
      if (!id) return fail("<way> needs a numeric id");
      current = RawWay{*id, {}, {}};
    } else if (current && std::strcmp(name, "nd") == 0) {
      const auto ref = parse_number<NodeId>(attribute(attrs, "ref"));
      if (!ref) return fail("<nd> needs a numeric ref");
      current->refs.push_back(*ref);
    } else if (current && std::strcmp(name, "tag") == 0) {
      const char* k = attribute(attrs, "k");
      const char* v = attribute(attrs, "v");
      if (k != nullptr && v != nullptr) current->tags.emplace_back(k, v);
    }
  }

  void end(const char* name) {
    if (current && std::strcmp(name, "way") == 0) {
      ways.push_back(std::move(*current));
      current.reset();
    }
  }

  static void on_start(void* self, const XML_Char* name, const XML_Char** attrs) {
    static_cast<OsmReader*>(self)->start(name, attrs);
  }
  static void on_end(void* self, const XML_Char* name) { static_cast<OsmReader*>(self)->end(name); }
};

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

// Runs expat over the document, feeding it chunk by chunk from `next_chunk`.
template <typename ChunkSource>
OsmReader read_document(ChunkSource&& next_chunk) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(XML_ParserCreate(nullptr));
  OsmReader reader;
  reader.parser = parser.get();
  XML_SetUserData(parser.get(), &reader);
  XML_SetElementHandler(parser.get(), &OsmReader::on_start, &OsmReader::on_end);

  std::string_view chunk;
  bool last = false;
  while (!last) {
    last = !next_chunk(chunk);
    if (XML_Parse(parser.get(), chunk.data(), static_cast<int>(chunk.size()), last ? 1 : 0) ==
        XML_STATUS_ERROR) {
      if (reader.failure) throw *reader.failure;
      throw Error(ErrorCode::XmlSyntaxError,
                  "line " + std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
                      XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
  }
  if (reader.failure) throw *reader.failure;
  return reader;
}

void rebuild_membership(MapTables& tables) {
  for (auto& [id, node] : tables.nodes) node.member_ways.clear();
  for (const auto& [id, way] : tables.ways) {
    for (NodeId n : way.nodes) {
      auto& members = tables.nodes.at(n).member_ways;
      if (members.empty() || members.back() != id) members.push_back(id);
    }
  }
  for (auto& [id, node] : tables.nodes) {
    std::sort(node.member_ways.begin(), node.member_ways.end());
    node.member_ways.erase(std::unique(node.member_ways.begin(), node.member_ways.end()),
                           node.member_ways.end());
  }
}

Bounds bounds_of(const std::map<NodeId, GeoNode>& nodes) {
  if (nodes.empty()) return {};
  Bounds b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& [id, node] : nodes) {
    b.min_lat = std::min(b.min_lat, node.pos.lat);
    b.min_lon = std::min(b.min_lon, node.pos.lon);
    b.max_lat = std::max(b.max_lat, node.pos.lat);
    b.max_lon = std::max(b.max_lon, node.pos.lon);
  }
  return b;
}

MapTables assemble(OsmReader reader, const PathTypeMap& path_types) {
  MapTables tables;
  tables.nodes = std::move(reader.nodes);
  for (const RawWay& raw : reader.ways) {
    TraversedWay t = traverse_way(raw, tables.nodes, path_types);
    if (t.status == WayStatus::TooShort) {
      ++tables.dropped_short;
      continue;
    }
    if (t.status == WayStatus::Untyped) {
      ++tables.dropped_untyped;
      continue;
    }
    if (tables.ways.count(raw.id) != 0) continue;
    Way way{raw.id, std::move(t.nodes), *t.type, 0.0};
    way.length_km = compute_way_length(way, tables.nodes);
    tables.ways.emplace(way.id, std::move(way));
  }
  tables.bounds = bounds_of(tables.nodes);
  rebuild_membership(tables);
  return tables;
}

}  // namespace

TraversedWay traverse_way(const RawWay& way, const std::map<NodeId, GeoNode>& nodes,
                          const PathTypeMap& path_types) {
  TraversedWay out;
  for (NodeId ref : way.refs) {
    if (nodes.count(ref) == 0) {
      throw Error(ErrorCode::DanglingNodeRef,
                  "way " + std::to_string(way.id) + " references node " + std::to_string(ref));
    }
  }
  out.nodes = way.refs;
  for (const auto& [k, v] : way.tags) {
    if (k != kRoadClassTag) continue;
    if (const auto it = path_types.find(v); it != path_types.end()) out.type = it->second;
    break;
  }
  if (out.nodes.size() < 2) {
    out.status = WayStatus::TooShort;
  } else if (!out.type) {
    out.status = WayStatus::Untyped;
  }
  return out;
}

MapTables parse_osm(const std::filesystem::path& osm_file, const PathTypeMap& path_types) {
  std::ifstream in(osm_file, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + osm_file.string());
  std::string buffer(1 << 16, '\0');
  auto reader = read_document([&](std::string_view& chunk) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    chunk = std::string_view(buffer.data(), static_cast<std::size_t>(in.gcount()));
    return static_cast<bool>(in);
  });
  return assemble(std::move(reader), path_types);
}

MapTables parse_osm_string(std::string_view xml, const PathTypeMap& path_types) {
  bool sent = false;
  auto reader = read_document([&](std::string_view& chunk) {
    chunk = sent ? std::string_view{} : xml;
    sent = true;
    return false;
  });
  return assemble(std::move(reader), path_types);
}

double compute_way_length(const Way& way, const std::map<NodeId, GeoNode>& nodes) {
  double total = 0.0;
  for (std::size_t i = 1; i < way.nodes.size(); ++i) {
    total += geodesic_distance(nodes.at(way.nodes[i - 1]).pos, nodes.at(way.nodes[i]).pos);
  }
  return total;
}

MapTables normalize_map(MapTables tables) {
  std::map<NodeId, std::size_t> occurrences;
  for (const auto& [id, way] : tables.ways) {
    for (NodeId n : way.nodes) ++occurrences[n];
  }

  std::map<WayId, Way> out;
  std::set<WayId> reserved;
  for (const auto& [id, way] : tables.ways) reserved.insert(id);

  for (const auto& [id, way] : tables.ways) {
    std::vector<std::size_t> cuts;
    for (std::size_t i = 1; i + 1 < way.nodes.size(); ++i) {
      if (occurrences[way.nodes[i]] >= 2) cuts.push_back(i);
    }
    if (cuts.empty()) {
      out.emplace(id, way);
      continue;
    }
    cuts.push_back(way.nodes.size() - 1);
    std::size_t begin = 0;
    WayId ordinal = 1;
    for (std::size_t cut : cuts) {
      const WayId child = id * 1000 + ordinal++;
      if (reserved.count(child) != 0 || out.count(child) != 0) {
        throw Error(ErrorCode::SegmentIdCollision,
                    "segment id " + std::to_string(child) + " of way " + std::to_string(id) + " already exists");
      }
      Way seg{child, {way.nodes.begin() + static_cast<std::ptrdiff_t>(begin),
                      way.nodes.begin() + static_cast<std::ptrdiff_t>(cut) + 1},
              way.type, 0.0};
      seg.length_km = compute_way_length(seg, tables.nodes);
      out.emplace(child, std::move(seg));
      begin = cut;
    }
  }
  tables.ways = std::move(out);
  rebuild_membership(tables);
  return tables;
}

void project_nodes(MapTables& tables, const ProjectionSpec& spec) {
  for (auto& [id, node] : tables.nodes) node.projected = geo_to_projected(node.pos, spec);
}

std::string dump_ways(const MapTables& tables) {
  std::ostringstream out;
  for (const auto& [id, way] : tables.ways) {
    char length[64];
    std::snprintf(length, sizeof(length), "%.9f", way.length_km);
    out << id << ' ' << way.type << ' ' << length;
    for (NodeId n : way.nodes) out << ' ' << n;
    out << '\n';
  }
  return out.str();
}

}  // namespace udtn
