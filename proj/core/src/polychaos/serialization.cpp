#include "boed/polychaos/serialization.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace boed::polychaos {

using nlohmann::json;

std::string expansion_to_json(const PCExpansion& expansion) {
  json doc;
  doc["dimension"] = expansion.dimension();
  doc["parameter_dimension"] = expansion.parameter_dimension();
  doc["degree"] = expansion.index_set().degree();
  doc["ordering"] = "grlex";
  json maps = json::array();
  for (const auto& m : expansion.maps()) maps.push_back({{"gamma", m.gamma}, {"delta", m.delta}});
  doc["maps"] = std::move(maps);
  doc["outputs"] = expansion.outputs();
  const auto& flags = expansion.log_space();
  const bool uniform = std::all_of(flags.begin(), flags.end(), [&](bool f) { return f == flags.front(); });
  if (uniform) {
    doc["log_space"] = flags.front();
  } else {
    doc["log_space"] = flags;
  }
  const auto& c = expansion.coefficients();
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(c.size()));
  for (Eigen::Index r = 0; r < c.rows(); ++r) {
    for (Eigen::Index k = 0; k < c.cols(); ++k) flat.push_back(c(r, k));
  }
  doc["coefficients"] = std::move(flat);
  return doc.dump(1);
}

PCExpansion expansion_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
    if (doc.at("ordering").get<std::string>() != "grlex") {
      throw std::invalid_argument("expansion: unsupported ordering " +
                                  doc.at("ordering").get<std::string>());
    }
    const int dimension = doc.at("dimension").get<int>();
    const int degree = doc.at("degree").get<int>();
    const int outputs = doc.at("outputs").get<int>();
    auto index_set = IndexSet::total_order(dimension, degree);

    std::vector<AffineMap> maps;
    for (const auto& m : doc.at("maps")) {
      maps.emplace_back(m.at("gamma").get<double>(), m.at("delta").get<double>());
    }
    const auto flat = doc.at("coefficients").get<std::vector<double>>();
    const auto n_terms = static_cast<Eigen::Index>(index_set.size());
    if (outputs < 1 || flat.size() != static_cast<std::size_t>(outputs) * index_set.size()) {
      throw std::invalid_argument("expansion: coefficient count does not match outputs x terms");
    }
    Eigen::MatrixXd coefficients(outputs, n_terms);
    for (Eigen::Index r = 0; r < outputs; ++r) {
      for (Eigen::Index k = 0; k < n_terms; ++k) {
        coefficients(r, k) = flat[static_cast<std::size_t>(r * n_terms + k)];
      }
    }
    // log_space is either one flag for all outputs or one per output.
    const auto& flag = doc.at("log_space");
    std::vector<bool> log_space =
        flag.is_boolean() ? std::vector<bool>(static_cast<std::size_t>(outputs), flag.get<bool>())
                          : flag.get<std::vector<bool>>();
    return PCExpansion(std::move(index_set), std::move(coefficients), std::move(maps),
                       doc.value("parameter_dimension", dimension / 2), std::move(log_space));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("expansion: malformed JSON: ") + e.what());
  }
}

void save_expansion(const PCExpansion& expansion, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << expansion_to_json(expansion) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

PCExpansion load_expansion(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return expansion_from_json(buffer.str());
}

}  // namespace boed::polychaos
