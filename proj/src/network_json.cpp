#include "entcap/network_json.hpp"

#include "entcap/error.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace entcap {

namespace {

void reject_unknown(const Json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw InvalidInput("unknown field \"" + key + "\" in " + std::string(where));
  }
}

const Json& field(const Json& obj, const char* key, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidInput("missing field \"" + std::string(key) + "\" in " + std::string(where));
  return *it;
}

std::string as_string(const Json& j, std::string_view what) {
  if (!j.is_string()) throw InvalidInput(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> string_list(const Json& j, std::string_view what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(as_string(x, what));
  return out;
}

}  // namespace

Network network_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("network must be a JSON object");
  reject_unknown(j, {"vertices", "sources", "sinks", "edges", "stages"}, "network");
  Network net;
  net.vertices = string_list(field(j, "vertices", "network"), "vertices");
  net.sources = string_list(field(j, "sources", "network"), "sources");
  net.sinks = string_list(field(j, "sinks", "network"), "sinks");
  const auto& edges = field(j, "edges", "network");
  if (!edges.is_array()) throw InvalidInput("edges must be an array");
  for (const auto& je : edges) {
    if (!je.is_object()) throw InvalidInput("edge must be an object");
    reject_unknown(je, {"id", "u", "v", "dim", "orientation"}, "edge");
    Edge e;
    e.id = as_string(field(je, "id", "edge"), "edge id");
    e.u = as_string(field(je, "u", "edge"), "edge endpoint");
    e.v = as_string(field(je, "v", "edge"), "edge endpoint");
    const auto& dim = field(je, "dim", "edge");
    if (!dim.is_number_integer()) throw InvalidInput("edge \"" + e.id + "\": dim must be an integer");
    if (dim.is_number_unsigned()) {
      e.dim = dim.get<Dim>();
    } else if (dim.get<std::int64_t>() < 0) {
      throw InvalidInput("edge \"" + e.id + "\": dim must be non-negative");
    } else {
      e.dim = static_cast<Dim>(dim.get<std::int64_t>());
    }
    if (auto it = je.find("orientation"); it != je.end()) {
      e.orientation = orientation_from_string(as_string(*it, "orientation"));
    }
    net.edges.push_back(std::move(e));
  }
  if (auto it = j.find("stages"); it != j.end()) {
    if (!it->is_array()) throw InvalidInput("stages must be an array");
    for (const auto& js : *it) {
      if (!js.is_object()) throw InvalidInput("stage pair must be an object");
      reject_unknown(js, {"early", "late"}, "stage pair");
      net.stages.push_back({as_string(field(js, "early", "stage pair"), "early"),
                            as_string(field(js, "late", "stage pair"), "late")});
    }
  }
  return net;
}

Network parse_network(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  return network_from_json(j);
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

Json network_to_json(const Network& net) {
  Json j;
  j["vertices"] = net.vertices;
  j["sources"] = net.sources;
  j["sinks"] = net.sinks;
  j["edges"] = Json::array();
  for (const auto& e : net.edges) {
    Json je;
    je["id"] = e.id;
    je["u"] = e.u;
    je["v"] = e.v;
    je["dim"] = e.dim;
    je["orientation"] = std::string(to_string(e.orientation));
    j["edges"].push_back(std::move(je));
  }
  if (!net.stages.empty()) {
    j["stages"] = Json::array();
    for (const auto& sp : net.stages) j["stages"].push_back({{"early", sp.early}, {"late", sp.late}});
  }
  return j;
}

std::string dump_network(const Network& net) { return network_to_json(net).dump(2) + "\n"; }

}  // namespace entcap
