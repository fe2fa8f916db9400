#include "domp/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "domp/errors.hpp"

namespace domp {

using nlohmann::json;

namespace {

int checked_index(const json& entry, const char* key, int n) {
  if (!entry.contains(key)) throw InvalidArgument(std::string("interaction entry missing '") + key + "'");
  const int v = entry.at(key).get<int>();
  if (v < 0 || v >= n) {
    throw InvalidArgument(std::string("interaction index '") + key + "' out of range");
  }
  return v;
}

InteractionMatrix parse_interaction(const json& block, int n, const char* a, const char* b,
                                    const char* c, const char* d) {
  InteractionMatrix out(n * n);
  if (!block.is_object() || !block.contains("entries")) {
    throw InvalidArgument("interaction block must be an object with 'entries'");
  }
  for (const auto& entry : block.at("entries")) {
    const int i0 = checked_index(entry, a, n);
    const int i1 = checked_index(entry, b, n);
    const int i2 = checked_index(entry, c, n);
    const int i3 = checked_index(entry, d, n);
    out.set(pair_index(n, i0, i1), pair_index(n, i2, i3), entry.at("value").get<double>());
  }
  return out;
}

json dump_interaction(const InteractionMatrix& m, int n, const char* a, const char* b,
                      const char* c, const char* d) {
  json entries = json::array();
  for (const auto& e : m.upper_entries()) {
    entries.push_back({{a, e.row / n}, {b, e.row % n}, {c, e.col / n}, {d, e.col % n},
                       {"value", e.value}});
  }
  return json{{"entries", entries}};
}

}  // namespace

Instance instance_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("instance JSON parse error: ") + e.what());
  }
  try {
    const int n = doc.at("n").get<int>();
    const int p = doc.at("p").get<int>();
    if (n < 2) throw InvalidArgument("instance needs n >= 2");
    const auto& lam = doc.at("lambda");
    const auto& cost = doc.at("C");
    if (!lam.is_array() || static_cast<int>(lam.size()) != n) {
      throw InvalidArgument("'lambda' must be an array of n reals");
    }
    if (!cost.is_array() || static_cast<int>(cost.size()) != n) {
      throw InvalidArgument("'C' must be an n x n array");
    }
    Eigen::VectorXd lambda(n);
    Eigen::MatrixXd costs(n, n);
    for (int k = 0; k < n; ++k) lambda(k) = lam[k].get<double>();
    for (int j = 0; j < n; ++j) {
      if (!cost[j].is_array() || static_cast<int>(cost[j].size()) != n) {
        throw InvalidArgument("'C' must be an n x n array");
      }
      for (int l = 0; l < n; ++l) costs(j, l) = cost[j][l].get<double>();
    }
    InteractionMatrix ordering;
    InteractionMatrix allocation;
    if (doc.contains("D") && !doc.at("D").is_null()) {
      ordering = parse_interaction(doc.at("D"), n, "j", "k", "jp", "kp");
    }
    if (doc.contains("H") && !doc.at("H").is_null()) {
      allocation = parse_interaction(doc.at("H"), n, "j", "l", "p", "q");
    }
    return Instance(p, std::move(costs), std::move(lambda), std::move(ordering),
                    std::move(allocation));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed instance JSON: ") + e.what());
  }
}

std::string instance_to_json(const Instance& instance, int indent) {
  const int n = instance.n();
  json doc;
  doc["n"] = n;
  doc["p"] = instance.p();
  doc["lambda"] = std::vector<double>(instance.lambda().data(), instance.lambda().data() + n);
  json rows = json::array();
  for (int j = 0; j < n; ++j) {
    std::vector<double> row(n);
    for (int l = 0; l < n; ++l) row[l] = instance.cost(j, l);
    rows.push_back(row);
  }
  doc["C"] = rows;
  if (!instance.ordering_interaction().is_zero()) {
    doc["D"] = dump_interaction(instance.ordering_interaction(), n, "j", "k", "jp", "kp");
  }
  if (!instance.allocation_interaction().is_zero()) {
    doc["H"] = dump_interaction(instance.allocation_interaction(), n, "j", "l", "p", "q");
  }
  return doc.dump(indent);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_text_file(path));
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text_file(path, instance_to_json(instance));
}

}  // namespace domp
