// pybind11 surface: enough to script batches and inspect maps from Python.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "udtn/config.hpp"
#include "udtn/engine.hpp"
#include "udtn/error.hpp"
#include "udtn/geo.hpp"
#include "udtn/map_ingest.hpp"
#include "udtn/reports.hpp"
#include "udtn/road_graph.hpp"

namespace py = pybind11;

namespace {

py::dict summary_dict(const udtn::RunSummary& s) {
  py::dict d;
  d["run_index"] = s.run_index;
  d["events_generated"] = s.events_generated;
  d["events_delivered"] = s.events_delivered;
  d["delivery_ratio"] = s.delivery_ratio;
  d["total_transfers"] = s.total_transfers;
  d["mean_delivery_latency_h"] = s.mean_delivery_latency_h;
  d["contacts"] = s.per_agent_contacts;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::exception<udtn::Error>(m, "UdtnError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const udtn::Error& e) {
      py::object type = py::module_::import("udtnsim._core").attr("UdtnError");
      py::object exc = type(e.what());
      exc.attr("code") = std::string(udtn::to_string(e.code()));
      exc.attr("cause") = std::string(udtn::to_string(e.cause()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  m.def("geodesic_distance",
        [](double lat1, double lon1, double lat2, double lon2) {
          return udtn::geodesic_distance({lat1, lon1}, {lat2, lon2});
        },
        py::arg("lat1"), py::arg("lon1"), py::arg("lat2"), py::arg("lon2"),
        "Great-circle distance in km.");

  m.def("convert_hms", &udtn::convert_hms, py::arg("hours"));

  m.def("map_stats",
        [](const std::filesystem::path& config) {
          const udtn::Scenario s = udtn::load_config(config);
          const udtn::MapTables t = udtn::normalize_map(udtn::parse_osm(s.general.map_path, s.general.path_types));
          const udtn::RoadGraph g = udtn::build_graph(t);
          py::dict d;
          d["vertices"] = g.vertices().size();
          d["edges"] = g.edges().size();
          d["ways"] = t.ways.size();
          d["dropped_untyped"] = t.dropped_untyped;
          d["dropped_short"] = t.dropped_short;
          return d;
        },
        py::arg("config"), "Parse and normalise the scenario map; no simulation.");

  m.def("run_batch",
        [](const std::filesystem::path& config, std::uint64_t seed, std::optional<int> runs,
           std::optional<std::filesystem::path> report_dir) {
          udtn::RunOverrides o;
          o.runs = runs;
          o.report_dir = std::move(report_dir);
          udtn::BatchResult r;
          {
            py::gil_scoped_release release;
            r = udtn::run_many(config, seed, o);
          }
          py::list summaries, failures;
          for (const auto& s : r.summaries) summaries.append(summary_dict(s));
          for (const auto& f : r.failures) {
            py::dict d;
            d["run_index"] = f.run_index;
            d["message"] = f.message;
            d["cause"] = f.cause ? py::cast(std::string(udtn::to_string(*f.cause))) : py::none();
            failures.append(d);
          }
          py::dict out;
          out["summaries"] = summaries;
          out["failures"] = failures;
          return out;
        },
        py::arg("config"), py::arg("seed") = 0, py::arg("runs") = py::none(), py::arg("report_dir") = py::none(),
        "Run every simulation of a scenario and return per-run summaries.");
}
