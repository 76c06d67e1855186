#include "boed/harness/reports.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace boed::harness {

using nlohmann::json;

namespace {

using Key = std::tuple<Algorithm, int, int, int>;

Key key_of(const ReplicateRecord& r) { return {r.algorithm, r.n, r.m, r.t}; }

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("write failed for '{}'", path.string()));
}

std::string coord(const ReplicateRecord& r, int k) {
  if (r.failed || k >= r.design.size()) return "";
  return fmt::format("{}", r.design[k]);
}

std::string termination_of(const ReplicateRecord& r) { return r.failed ? "failed" : r.termination; }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (header[k] == name) return k;
    }
    throw std::runtime_error(fmt::format("missing column '{}'", name));
  }
};

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot read '{}'", path.string()));
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(fmt::format("'{}' is empty", path.string()));
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split(line);
    if (row.size() != table.header.size()) {
      throw std::runtime_error(fmt::format("'{}': row has {} fields, header has {}", path.string(), row.size(),
                                           table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

void emit_reports(const ExperimentMatrixResult& result, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error(fmt::format("cannot create '{}': {}", out_dir.string(), ec.message()));

  for (const auto& r : result.records) {
    if (!r.failed && r.design.size() > 2) {
      throw std::invalid_argument("emit_reports: designs of dimension > 2 do not fit the x,y columns");
    }
  }

  {
    const auto path = out_dir / "designs.csv";
    auto out = open_out(path);
    out << "algorithm,N,M,t,x,y,termination,iters,wall_s\n";
    for (const auto& r : result.records) {
      out << fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(r.algorithm), r.n, r.m, r.t, coord(r, 0),
                         coord(r, 1), termination_of(r), r.iterations, r.wall_s);
    }
    finish(out, path);
  }
  {
    const auto path = out_dir / "reestimates.csv";
    auto out = open_out(path);
    out << "algorithm,N,M,t,u_hat\n";
    for (const auto& r : result.records) {
      if (r.failed) continue;
      out << fmt::format("{},{},{},{},{}\n", to_string(r.algorithm), r.n, r.m, r.t, r.u_hat);
    }
    finish(out, path);
  }
  {
    const auto path = out_dir / "gaps.csv";
    auto out = open_out(path);
    out << "N,M,t,upper,lower,gap,variance\n";
    for (const auto& r : result.records) {
      if (r.failed || !r.gap) continue;
      out << fmt::format("{},{},{},{},{},{},{}\n", r.n, r.m, r.t, r.gap->upper, r.gap->lower, r.gap->gap,
                         r.gap->variance);
    }
    finish(out, path);
  }
  {
    const auto path = out_dir / "iterations.csv";
    auto out = open_out(path);
    out << "algorithm,N,M,t,iters,n_objective_evals,n_gradient_evals,final_objective\n";
    for (const auto& r : result.records) {
      if (r.failed) continue;
      out << fmt::format("{},{},{},{},{},{},{},{}\n", to_string(r.algorithm), r.n, r.m, r.t, r.iterations,
                         r.n_objective_evals, r.n_gradient_evals, r.final_objective);
    }
    finish(out, path);
  }
  {
    const auto path = out_dir / "mse_vs_time.csv";
    auto out = open_out(path);
    out << "algorithm,N,M,mean_runtime_s,mse\n";
    for (const auto& c : result.cells) {
      if (c.completed == 0) continue;
      out << fmt::format("{},{},{},{},{}\n", to_string(c.algorithm), c.n, c.m, c.mean_runtime_s, c.mse);
    }
    finish(out, path);
  }
  {
    json cells = json::array();
    for (const auto& c : result.cells) {
      cells.push_back({{"algorithm", std::string(to_string(c.algorithm))},
                       {"N", c.n},
                       {"M", c.m},
                       {"completed", c.completed},
                       {"failed", c.failed},
                       {"mean_runtime_s", c.mean_runtime_s},
                       {"mean_u_hat", c.mean_u_hat},
                       {"mse", c.mse}});
    }
    json failures = json::array();
    for (const auto& r : result.records) {
      if (!r.failed) continue;
      failures.push_back({{"algorithm", std::string(to_string(r.algorithm))},
                          {"N", r.n},
                          {"M", r.m},
                          {"t", r.t},
                          {"error", r.error}});
    }
    json summary{{"U_ref", result.u_ref},
                 {"cells", cells},
                 {"failures", failures},
                 {"config", json::parse(experiment_config_to_json(result.config))}};
    const auto path = out_dir / "summary.json";
    auto out = open_out(path);
    out << summary.dump(2) << '\n';
    finish(out, path);
  }
}

ExperimentMatrixResult read_reports(const std::filesystem::path& out_dir) {
  ExperimentMatrixResult result;

  json summary;
  {
    const auto path = out_dir / "summary.json";
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot read '{}'", path.string()));
    summary = json::parse(in);
  }
  result.config = parse_experiment_config(summary.at("config").dump());

  std::map<Key, std::string> errors;
  for (const auto& f : summary.at("failures")) {
    errors[{algorithm_from_string(f.at("algorithm").get<std::string>()), f.at("N").get<int>(),
            f.at("M").get<int>(), f.at("t").get<int>()}] = f.at("error").get<std::string>();
  }

  const auto designs = read_csv(out_dir / "designs.csv");
  const auto c_alg = designs.column("algorithm"), c_n = designs.column("N"), c_m = designs.column("M"),
             c_t = designs.column("t"), c_x = designs.column("x"), c_y = designs.column("y"),
             c_term = designs.column("termination"), c_it = designs.column("iters"),
             c_wall = designs.column("wall_s");
  std::map<Key, std::size_t> slot;
  for (const auto& row : designs.rows) {
    ReplicateRecord r;
    r.algorithm = algorithm_from_string(row[c_alg]);
    r.n = std::stoi(row[c_n]);
    r.m = std::stoi(row[c_m]);
    r.t = std::stoi(row[c_t]);
    r.iterations = std::stoi(row[c_it]);
    r.wall_s = std::stod(row[c_wall]);
    if (row[c_term] == "failed") {
      r.failed = true;
      if (auto it = errors.find(key_of(r)); it != errors.end()) r.error = it->second;
    } else {
      r.termination = row[c_term];
      const bool two_d = !row[c_y].empty();
      r.design.resize(two_d ? 2 : 1);
      r.design[0] = std::stod(row[c_x]);
      if (two_d) r.design[1] = std::stod(row[c_y]);
    }
    slot[key_of(r)] = result.records.size();
    result.records.push_back(std::move(r));
  }
  auto lookup = [&](Algorithm a, const std::vector<std::string>& row, std::size_t cn, std::size_t cm,
                    std::size_t ct) -> ReplicateRecord& {
    const Key k{a, std::stoi(row[cn]), std::stoi(row[cm]), std::stoi(row[ct])};
    auto it = slot.find(k);
    if (it == slot.end()) throw std::runtime_error("report row without a matching designs.csv row");
    return result.records[it->second];
  };

  const auto re = read_csv(out_dir / "reestimates.csv");
  for (const auto& row : re.rows) {
    lookup(algorithm_from_string(row[re.column("algorithm")]), row, re.column("N"), re.column("M"),
           re.column("t"))
        .u_hat = std::stod(row[re.column("u_hat")]);
  }

  const auto it = read_csv(out_dir / "iterations.csv");
  for (const auto& row : it.rows) {
    auto& r = lookup(algorithm_from_string(row[it.column("algorithm")]), row, it.column("N"), it.column("M"),
                     it.column("t"));
    r.n_objective_evals = std::stoll(row[it.column("n_objective_evals")]);
    r.n_gradient_evals = std::stoll(row[it.column("n_gradient_evals")]);
    r.final_objective = std::stod(row[it.column("final_objective")]);
  }

  const auto gaps = read_csv(out_dir / "gaps.csv");
  for (const auto& row : gaps.rows) {
    auto& r = lookup(Algorithm::saa, row, gaps.column("N"), gaps.column("M"), gaps.column("t"));
    optim::GapEstimate g;
    g.upper = std::stod(row[gaps.column("upper")]);
    g.lower = std::stod(row[gaps.column("lower")]);
    g.gap = std::stod(row[gaps.column("gap")]);
    g.variance = std::stod(row[gaps.column("variance")]);
    r.gap = g;
  }

  summarize(result);
  return result;
}

void write_run_csv(const ExperimentMatrixResult& result, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "t,x,y,final_objective,u_hat,gap,variance,iters,wall_s,termination\n";
  for (const auto& r : result.records) {
    if (r.failed) {
      out << fmt::format("{},,,,,,,{},{},failed\n", r.t, r.iterations, r.wall_s);
      continue;
    }
    const std::string gap = r.gap ? fmt::format("{}", r.gap->gap) : "";
    const std::string var = r.gap ? fmt::format("{}", r.gap->variance) : "";
    out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.t, coord(r, 0), coord(r, 1), r.final_objective,
                       r.u_hat, gap, var, r.iterations, r.wall_s, r.termination);
  }
  finish(out, path);
}

}  // namespace boed::harness
