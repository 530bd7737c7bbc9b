#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qsp/rootdata.hpp"

namespace qsp {

namespace {

std::vector<int> identity_tau(int n) {
  std::vector<int> t(n);
  for (int i = 0; i < n; ++i) t[i] = i;
  return t;
}

std::vector<int> swap_tau(int n, std::vector<std::pair<int, int>> pairs) {
  std::vector<int> t = identity_tau(n);
  for (auto [a, b] : pairs) {
    t[a] = b;
    t[b] = a;
  }
  return t;
}

std::vector<bool> black_set(int n, std::vector<int> nodes) {
  std::vector<bool> b(n, false);
  for (int i : nodes) b[i] = true;
  return b;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"AI1",  "AI2",  "AI3",    "AII3", "AIII11",      "AIII3",
          "AIV2", "BII2", "CI2",    "CII3", "DII4",        "FII",
          "G2-split",     "diagonal-A1",    "diagonal-A2"};
}

SatakeDiagram preset_diagram(const std::string& name) {
  if (name == "AI1")
    return SatakeDiagram("AI1", CartanData::simple('A', 1), {false},
                         identity_tau(1));
  if (name == "AI2")
    return SatakeDiagram("AI2", CartanData::simple('A', 2), black_set(2, {}),
                         identity_tau(2));
  if (name == "AI3")
    return SatakeDiagram("AI3", CartanData::simple('A', 3), black_set(3, {}),
                         identity_tau(3));
  if (name == "AII3")
    return SatakeDiagram("AII3", CartanData::simple('A', 3),
                         black_set(3, {0, 2}), identity_tau(3));
  if (name == "AIII11")
    return SatakeDiagram(
        "AIII11",
        CartanData::direct_sum(CartanData::simple('A', 1),
                               CartanData::simple('A', 1)),
        black_set(2, {}), swap_tau(2, {{0, 1}}));
  if (name == "AIII3")
    return SatakeDiagram("AIII3", CartanData::simple('A', 3), black_set(3, {}),
                         swap_tau(3, {{0, 2}}));
  if (name == "AIV2")
    return SatakeDiagram("AIV2", CartanData::simple('A', 2), black_set(2, {}),
                         swap_tau(2, {{0, 1}}));
  if (name == "BII2")
    return SatakeDiagram("BII2", CartanData::simple('B', 2), black_set(2, {1}),
                         identity_tau(2));
  if (name == "CI2")
    return SatakeDiagram("CI2", CartanData::simple('C', 2), black_set(2, {}),
                         identity_tau(2));
  if (name == "CII3")
    return SatakeDiagram("CII3", CartanData::simple('C', 3),
                         black_set(3, {0, 2}), identity_tau(3));
  if (name == "DII4")
    // tau must restrict to the opposition involution of the black A3 chain,
    // which exchanges the two fork nodes.
    return SatakeDiagram("DII4", CartanData::simple('D', 4),
                         black_set(4, {1, 2, 3}), swap_tau(4, {{2, 3}}));
  if (name == "FII")
    return SatakeDiagram("FII", CartanData::simple('F', 4),
                         black_set(4, {0, 1, 2}), identity_tau(4));
  if (name == "G2-split")
    return SatakeDiagram("G2-split", CartanData::simple('G', 2),
                         black_set(2, {}), identity_tau(2));
  if (name == "diagonal-A1")
    return SatakeDiagram(
        "diagonal-A1",
        CartanData::direct_sum(CartanData::simple('A', 1),
                               CartanData::simple('A', 1)),
        black_set(2, {}), swap_tau(2, {{0, 1}}));
  if (name == "diagonal-A2")
    return SatakeDiagram(
        "diagonal-A2",
        CartanData::direct_sum(CartanData::simple('A', 2),
                               CartanData::simple('A', 2)),
        black_set(4, {}), swap_tau(4, {{0, 2}, {1, 3}}));
  throw error("unknown preset diagram: " + name);
}

namespace {

CartanData cartan_from_json(const nlohmann::json& j) {
  if (j.contains("cartan_matrix")) {
    std::vector<std::vector<int>> a =
        j.at("cartan_matrix").get<std::vector<std::vector<int>>>();
    return CartanData(a);
  }
  if (j.contains("components")) {
    const auto& comps = j.at("components");
    if (!comps.is_array() || comps.empty())
      throw error("config: components must be a non-empty array");
    bool first = true;
    CartanData acc = CartanData::simple('A', 1);
    for (const auto& c : comps) {
      std::string t = c.at("type").get<std::string>();
      int r = c.at("rank").get<int>();
      if (t.size() != 1) throw error("config: component type must be A..G");
      CartanData part = CartanData::simple(t[0], r);
      acc = first ? part : CartanData::direct_sum(acc, part);
      first = false;
    }
    return acc;
  }
  if (j.contains("type")) {
    std::string t = j.at("type").get<std::string>();
    int r = j.at("rank").get<int>();
    if (t.size() != 1) throw error("config: type must be a letter A..G");
    return CartanData::simple(t[0], r);
  }
  throw error("config: need one of cartan_matrix / type / components");
}

SatakeDiagram diagram_from_json(const nlohmann::json& j);

}  // namespace

SatakeDiagram diagram_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw error(std::string("config: invalid JSON: ") + e.what());
  }
  try {
    return diagram_from_json(j);
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    throw error(std::string("config: ") + e.what());
  }
}

namespace {

SatakeDiagram diagram_from_json(const nlohmann::json& j) {
  if (j.contains("preset")) return preset_diagram(j.at("preset").get<std::string>());
  CartanData cartan = cartan_from_json(j);
  const int n = cartan.rank();
  std::string name = j.value("name", std::string("custom"));
  // Node labels in config files are 1-based.
  std::vector<bool> black(n, false);
  if (j.contains("black")) {
    for (int node : j.at("black").get<std::vector<int>>()) {
      if (node < 1 || node > n) throw error("config: black node out of range");
      black[node - 1] = true;
    }
  }
  std::vector<int> tau = identity_tau(n);
  if (j.contains("tau")) {
    for (const auto& pair : j.at("tau")) {
      auto p = pair.get<std::vector<int>>();
      if (p.size() != 2 || p[0] < 1 || p[0] > n || p[1] < 1 || p[1] > n)
        throw error("config: tau entries must be 1-based pairs");
      tau[p[0] - 1] = p[1] - 1;
      tau[p[1] - 1] = p[0] - 1;
    }
  }
  std::map<int, int> c_overrides;
  if (j.contains("c")) {
    for (const auto& [key, value] : j.at("c").items()) {
      int node = std::stoi(key);
      if (node < 1 || node > n) throw error("config: c node out of range");
      c_overrides[node - 1] = value.get<int>();
    }
  }
  std::vector<int> reps;
  if (j.contains("representatives")) {
    for (int node : j.at("representatives").get<std::vector<int>>()) {
      if (node < 1 || node > n) throw error("config: representative out of range");
      reps.push_back(node - 1);
    }
  }
  return SatakeDiagram(name, cartan, black, tau, c_overrides, reps);
}

}  // namespace

SatakeDiagram diagram_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return diagram_from_json_text(ss.str());
}

}  // namespace qsp
