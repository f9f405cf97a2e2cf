#include "ordist/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ordist/error.hpp"

namespace ordist::io {

namespace {

void dump_into(const json& value, std::string& out) {
  switch (value.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump();
        out += ':';
        dump_into(item, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t k = 0; k < value.size(); ++k) {
        if (k) out += ',';
        dump_into(value[k], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double x = value.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      std::string text(buf);
      if (text.find_first_of(".eE") == std::string::npos) text += ".0";
      out += text;
      break;
    }
    default:
      out += value.dump();
  }
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

Eigen::MatrixXd rows_from_json(const json& rows, int dim, const char* name) {
  if (!rows.is_array()) fail(std::string("\"") + name + "\" must be an array of points");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim))
      throw Error(ErrorCode::ShapeMismatch, std::string("point ") + std::to_string(r + 1) +
                                                " of \"" + name + "\" does not have dim coordinates");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_number()) fail(std::string("non-numeric coordinate in \"") + name + "\"");
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c].get<double>();
    }
  }
  return out;
}

json rows_to_json(const Eigen::MatrixXd& rows) {
  json out = json::array();
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < rows.cols(); ++c) row.push_back(rows(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json pair_json(PairId p) { return json::array({p.i, p.j}); }

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string dump(const json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

OrderSpec order_spec_from_json(const json& doc) {
  if (!doc.is_object()) fail("order spec must be a JSON object");
  OrderSpec spec;
  const auto kind = doc.value("kind", std::string());
  if (kind == "complete") {
    spec.kind = PairKind::complete;
  } else if (kind == "bipartite") {
    spec.kind = PairKind::bipartite;
  } else {
    fail("\"kind\" must be \"complete\" or \"bipartite\"");
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) fail("\"n\" must be an integer");
  spec.n = doc["n"].get<int>();
  if (spec.kind == PairKind::bipartite) {
    if (!doc.contains("m") || !doc["m"].is_number_integer()) fail("\"m\" must be an integer");
    spec.m = doc["m"].get<int>();
  }
  if (!doc.contains("classes") || !doc["classes"].is_array()) fail("\"classes\" must be an array");
  for (const json& cls : doc["classes"]) {
    if (!cls.is_array()) fail("each class must be an array of pairs");
    PairClass pairs;
    for (const json& p : cls) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
          !p[1].is_number_integer())
        fail("each pair must be a 2-element integer array");
      pairs.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    spec.classes.push_back(std::move(pairs));
  }
  return canonicalize(std::move(spec));
}

OrderSpec parse_order_spec(const std::string& text) { return order_spec_from_json(parse_text(text)); }

json to_json(const OrderSpec& spec) {
  const OrderSpec canon = canonicalize(spec);
  json doc = json::object();
  doc["kind"] = std::string(to_string(canon.kind));
  doc["n"] = canon.n;
  if (canon.kind == PairKind::bipartite) doc["m"] = canon.m;
  json classes = json::array();
  for (const auto& cls : canon.classes) {
    json c = json::array();
    for (const PairId& p : cls) c.push_back(pair_json(p));
    classes.push_back(std::move(c));
  }
  doc["classes"] = std::move(classes);
  return doc;
}

PointConfig point_config_from_json(const json& doc) {
  if (!doc.is_object()) fail("point config must be a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<int>() < 0)
    fail("\"dim\" must be a nonnegative integer");
  if (!doc.contains("P")) fail("missing \"P\"");
  PointConfig config;
  config.dim = doc["dim"].get<int>();
  config.P = rows_from_json(doc["P"], config.dim, "P");
  if (doc.contains("Q") && !doc["Q"].is_null()) config.Q = rows_from_json(doc["Q"], config.dim, "Q");
  return config;
}

PointConfig parse_point_config(const std::string& text) {
  return point_config_from_json(parse_text(text));
}

json to_json(const PointConfig& config) {
  json doc = json::object();
  doc["dim"] = config.dim;
  doc["P"] = rows_to_json(config.P);
  if (config.Q) doc["Q"] = rows_to_json(*config.Q);
  return doc;
}

json to_json(const VerifyReport& report) {
  json doc = json::object();
  doc["verdict"] = report.match ? "match" : "mismatch";
  doc["margin"] = number_or_null(report.margin);
  doc["distinctness"] = number_or_null(report.distinctness);
  if (report.witness)
    doc["witness"] = json::array({pair_json(report.witness->first), pair_json(report.witness->second)});
  else
    doc["witness"] = nullptr;
  return doc;
}

json to_json(const RealizationReport& report) {
  json doc = json::object();
  doc["dim"] = report.config.dim;
  doc["epsilon"] = report.epsilon;
  doc["margin"] = number_or_null(report.margin);
  doc["min_eigenvalues"] = report.min_eigenvalues;
  return doc;
}

json to_json(const FalsifierReport& report) {
  json doc = json::object();
  doc["feasible"] = report.feasible;
  doc["best_loss"] = number_or_null(report.best_loss);
  doc["restarts"] = report.per_restart_losses.size();
  doc["dim"] = report.dim;
  doc["best_restart"] = report.best_restart;
  json losses = json::array();
  for (double x : report.per_restart_losses) losses.push_back(number_or_null(x));
  doc["per_restart_losses"] = std::move(losses);
  doc["best_config"] = to_json(report.best_config);
  return doc;
}

std::string to_csv(const PointConfig& config) {
  std::string out;
  for (int c = 1; c <= config.dim; ++c) {
    if (c > 1) out += ',';
    out += 'x' + std::to_string(c);
  }
  out += '\n';
  auto emit = [&](const Eigen::MatrixXd& rows) {
    char buf[40];
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
      for (Eigen::Index c = 0; c < rows.cols(); ++c) {
        if (c) out += ',';
        std::snprintf(buf, sizeof buf, "%.17g", rows(r, c));
        out += buf;
      }
      out += '\n';
    }
  };
  emit(config.P);
  if (config.Q) emit(*config.Q);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path);
  out << text;
  if (!out) fail("failed writing " + path);
}

}  // namespace ordist::io
