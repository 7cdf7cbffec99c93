#include "geninv/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace geninv {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_real(const std::string& s) {
  if (s.empty()) throw ParseError("empty number");
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad number: '" + s + "'");
  }
  if (pos != s.size()) throw ParseError("bad number: '" + s + "'");
  return v;
}

std::string format_real(double v, int precision) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw ParseError("empty complex literal");
  // Strip an optional pair of parentheses.
  if (s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  if (s.empty()) throw ParseError("empty complex literal");

  const char unit_i = 'i', unit_j = 'j';
  const char last = static_cast<char>(std::tolower(s.back()));
  const bool has_imag = last == unit_i || last == unit_j;
  if (!has_imag) return {parse_real(s), 0.0};

  std::string body = s.substr(0, s.size() - 1);
  // Split at the last top-level +/- that is not a leading sign and not part
  // of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    const char c = body[k];
    if (c != '+' && c != '-') continue;
    const char prev = static_cast<char>(std::tolower(body[k - 1]));
    if (prev == 'e') continue;
    split = k;
    break;
  }
  if (split == std::string::npos) {
    // Pure imaginary: "i", "-i", "2.5i".
    std::string imag = trim(body);
    if (imag.empty() || imag == "+") return {0.0, 1.0};
    if (imag == "-") return {0.0, -1.0};
    return {0.0, parse_real(imag)};
  }
  const std::string re = trim(body.substr(0, split));
  std::string im = trim(body.substr(split));
  if (im == "+") {
    im = "1";
  } else if (im == "-") {
    im = "-1";
  }
  return {parse_real(re), parse_real(im)};
}

std::string format_complex(Complex value, int precision) {
  const double re = value.real(), im = value.imag();
  if (im == 0.0) return format_real(re, precision);
  std::string imag = format_real(std::abs(im), precision) + "i";
  if (re == 0.0) return (im < 0 ? "-" : "") + imag;
  return format_real(re, precision) + (im < 0 ? "-" : "+") + imag;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data")) {
    throw ParseError("matrix JSON must carry rows, cols and data");
  }
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  const auto& data = j.at("data");
  if (!data.is_array() || data.size() != rows * cols) {
    throw ParseError("matrix JSON data must hold rows*cols entries");
  }
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (const auto& e : data) {
    if (e.is_number()) {
      entries.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
               e[1].is_number()) {
      entries.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else if (e.is_string()) {
      entries.push_back(parse_complex(e.get<std::string>()));
    } else {
      throw ParseError("matrix JSON entries must be numbers, [re, im] pairs "
                       "or complex strings");
    }
  }
  return Matrix(rows, cols, std::move(entries));
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

namespace {

Matrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<Complex>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<Complex> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(parse_complex(cell));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("CSV matrix has no rows");
  const std::size_t cols = rows.front().size();
  std::vector<Complex> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw ParseError("CSV matrix is ragged");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Matrix(rows.size(), cols, std::move(entries));
}

}  // namespace

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad matrix JSON: ") + e.what());
      }
      return matrix_from_json(j);
    }
    break;
  }
  return matrix_from_csv(text);
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << matrix_to_json(m).dump(2) << "\n";
}

nlohmann::json to_json(const ConditionReport& rep) {
  nlohmann::json residuals = nlohmann::json::object();
  for (const auto& [key, value] : rep.residuals) residuals[key] = value;
  return {{"theorem", condition_set_label(rep.theorem)},
          {"norm_value", rep.norm_value},
          {"norm_ok", rep.norm_ok},
          {"residuals", std::move(residuals)},
          {"all_hold", rep.all_hold},
          {"aux", rep.aux}};
}

nlohmann::json to_json(const BoundBreakdown& bound) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [label, value] : bound.terms) {
    terms.push_back({{"label", label},
                     {"value", std::isfinite(value)
                                   ? nlohmann::json(value)
                                   : nlohmann::json("divergent")}});
  }
  nlohmann::json j = {{"terms", std::move(terms)},
                      {"norm", norm_kind_name(bound.norm_kind)},
                      {"scalar_ratios", bound.scalar_ratios}};
  if (bound.total) {
    j["total"] = *bound.total;
  } else {
    j["total"] = "divergent";
  }
  return j;
}

nlohmann::json to_json(const PerturbResult& result) {
  nlohmann::json j = {{"exists", result.exists},
                      {"mode", series_mode_name(result.mode)},
                      {"projected_index", result.projected_index}};
  if (result.exists) {
    j["group_inverse"] = matrix_to_json(result.group_inv);
    j["corner_term"] = matrix_to_json(result.corner_term);
    j["z_term"] = matrix_to_json(result.z_term);
    j["tail_term"] = matrix_to_json(result.tail_term);
  }
  return j;
}

nlohmann::json to_json(const DrazinResult& result) {
  return {{"inverse", matrix_to_json(result.inverse)},
          {"index", result.index},
          {"spectral_idempotent", matrix_to_json(result.spectral_idempotent)},
          {"core_part", matrix_to_json(result.core_part)},
          {"nil_part", matrix_to_json(result.nil_part)}};
}

nlohmann::json to_json(const GenSpec& spec) {
  return {{"theorem", condition_set_token(spec.theorem)},
          {"dim", spec.dim},
          {"core_dim", spec.core_dim},
          {"seed", spec.seed},
          {"conjugate", spec.conjugate},
          {"family", family_name(spec.family)}};
}

nlohmann::json to_json(const TrialRecord& record) {
  nlohmann::json j = {{"spec", to_json(record.spec)},
                      {"ok", record.ok},
                      {"exists", record.exists},
                      {"conditions", to_json(record.conditions)}};
  if (!record.message.empty()) j["message"] = record.message;
  if (record.equivalence_ok) j["equivalence_ok"] = *record.equivalence_ok;
  if (record.formula_vs_oracle_err) {
    j["formula_vs_oracle_err"] = *record.formula_vs_oracle_err;
  }
  if (record.bound) j["bound"] = to_json(*record.bound);
  if (record.actual_error) j["actual_error"] = *record.actual_error;
  if (record.bound_satisfied) {
    j["bound_satisfied"] = *record.bound_satisfied;
  } else {
    j["bound_satisfied"] = "n/a";
  }
  return j;
}

nlohmann::json to_json(const BatchSummary& summary) {
  return {{"trials", summary.trials},
          {"failed", summary.failed},
          {"generation_retries", summary.generation_retries},
          {"existing", summary.existing},
          {"planted_missing", summary.planted_missing},
          {"bound_checked", summary.bound_checked},
          {"bound_violations", summary.bound_violations},
          {"equivalence_failures", summary.equivalence_failures},
          {"max_formula_err", summary.max_formula_err},
          {"mean_bound_ratio", summary.mean_bound_ratio},
          {"max_bound_ratio", summary.max_bound_ratio},
          {"clean", summary.clean()}};
}

nlohmann::json to_json(const ExampleReport& report) {
  nlohmann::json assertions = nlohmann::json::array();
  for (const auto& a : report.assertions) {
    assertions.push_back({{"name", a.name},
                          {"passed", a.passed},
                          {"skipped", a.skipped},
                          {"measured", a.measured},
                          {"expected", a.expected},
                          {"detail", a.detail}});
  }
  return {{"norm", norm_kind_name(report.norm_kind)},
          {"assertions", std::move(assertions)},
          {"all_passed", report.all_passed()}};
}

std::string render_matrix(const Matrix& m, int precision) {
  std::vector<std::string> cells(m.rows() * m.cols());
  std::vector<std::size_t> width(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::string cell = format_complex(m(i, j), precision);
      width[j] = std::max(width[j], cell.size());
      cells[i * m.cols() + j] = std::move(cell);
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "[ ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::string& cell = cells[i * m.cols() + j];
      os << std::string(width[j] - cell.size(), ' ') << cell;
      os << (j + 1 < m.cols() ? "  " : " ");
    }
    os << "]\n";
  }
  return os.str();
}

}  // namespace geninv
