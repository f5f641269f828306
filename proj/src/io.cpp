#include "mixkit/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mixkit/errors.hpp"

namespace mixkit {
namespace io {
namespace {

enum class Delimiter { kComma, kTab, kBlank };

struct Line {
  std::size_t number = 0;  // 1-based
  std::string_view text;
};

std::vector<Line> data_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#') out.push_back({number, line});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

Delimiter detect(std::string_view line) {
  if (line.find(',') != std::string_view::npos) return Delimiter::kComma;
  if (line.find('\t') != std::string_view::npos) return Delimiter::kTab;
  return Delimiter::kBlank;
}

std::string_view trim(std::string_view s) {
  const std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string_view::npos) return {};
  const std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string_view> split(std::string_view line, Delimiter d) {
  std::vector<std::string_view> fields;
  if (d == Delimiter::kBlank) {
    std::size_t pos = 0;
    while (true) {
      const std::size_t a = line.find_first_not_of(" \t", pos);
      if (a == std::string_view::npos) break;
      std::size_t b = line.find_first_of(" \t", a);
      if (b == std::string_view::npos) b = line.size();
      fields.push_back(line.substr(a, b - a));
      pos = b;
    }
    return fields;
  }
  const char sep = d == Delimiter::kComma ? ',' : '\t';
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = line.find(sep, pos);
    fields.push_back(trim(line.substr(pos, end == std::string_view::npos ? end : end - pos)));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return fields;
}

bool parse_number(std::string_view field, double& out) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

[[noreturn]] void fail_at(std::string_view source, std::size_t line, std::size_t column,
                          const std::string& what) {
  std::ostringstream msg;
  msg << source << ": line " << line;
  if (column > 0) msg << ", column " << column;
  msg << ": " << what;
  throw InputError(msg.str());
}

Table parse_lines(const std::vector<Line>& lines, std::string_view source, Header header) {
  Table t;
  if (lines.empty()) throw InputError(std::string(source) + ": no data");
  const Delimiter delim = detect(lines.front().text);
  std::size_t first = 0;
  if (header == Header::kOptional) {
    const auto fields = split(lines.front().text, delim);
    double ignored = 0.0;
    bool numeric = true;
    for (auto f : fields) numeric = numeric && parse_number(f, ignored);
    if (!numeric) {
      for (auto f : fields) t.header.emplace_back(f);
      t.cols = fields.size();
      first = 1;
    }
  }
  for (std::size_t r = first; r < lines.size(); ++r) {
    const auto fields = split(lines[r].text, delim);
    if (t.cols == 0) t.cols = fields.size();
    if (fields.size() != t.cols) {
      fail_at(source, lines[r].number, 0,
              "row has " + std::to_string(fields.size()) + " fields, expected " +
                  std::to_string(t.cols));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double v = 0.0;
      if (!parse_number(fields[c], v)) {
        fail_at(source, lines[r].number, c + 1,
                "not a finite number: '" + std::string(fields[c]) + "'");
      }
      t.values.push_back(v);
    }
    ++t.rows;
  }
  if (t.rows == 0) throw InputError(std::string(source) + ": no data rows");
  return t;
}

Eigen::MatrixXd to_matrix(const Table& t) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(t.rows), static_cast<Eigen::Index>(t.cols));
  for (std::size_t r = 0; r < t.rows; ++r) {
    for (std::size_t c = 0; c < t.cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = t(r, c);
    }
  }
  return m;
}

template <typename Row>
std::string tsv(const std::vector<std::string>& header, const std::vector<Row>& rows) {
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) out += (c ? "\t" : "") + header[c];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "\t" : "") + row[c];
    out += '\n';
  }
  return out;
}

std::string flag(bool b) { return b ? "true" : "false"; }

std::vector<std::string> report_fields(const MixingReport& r) {
  return {format_double(r.alpha()),       format_double(r.alpha_lower),
          format_double(r.alpha_upper),   flag(r.alpha_is_exact),
          format_double(r.beta),          format_double(r.phi_x_given_y),
          format_double(r.phi_y_given_x), format_double(r.mutual_information)};
}

const std::vector<std::string> kReportHeader = {
    "alpha", "alpha_lower",   "alpha_upper",   "alpha_is_exact",
    "beta",  "phi_x_given_y", "phi_y_given_x", "mutual_information"};

}  // namespace

std::vector<double> Table::column(std::size_t c) const {
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = (*this)(r, c);
  return out;
}

Table parse_table(std::string_view text, std::string_view source, Header header) {
  return parse_lines(data_lines(text), source, header);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

JointDist parse_joint(std::string_view text, std::string_view source) {
  return JointDist(to_matrix(parse_table(text, source)));
}

Channel parse_channel(std::string_view text, std::string_view source) {
  return Channel(to_matrix(parse_table(text, source)));
}

TripleDist parse_tensor(std::string_view text, std::string_view source) {
  const auto lines = data_lines(text);
  if (lines.empty()) throw InputError(std::string(source) + ": no data");
  const auto dims = split(lines.front().text, detect(lines.front().text));
  if (dims.size() != 3) {
    fail_at(source, lines.front().number, 0, "tensor header must be \"n m l\"");
  }
  std::size_t n[3] = {0, 0, 0};
  for (std::size_t d = 0; d < 3; ++d) {
    const char* end = dims[d].data() + dims[d].size();
    const auto [ptr, ec] = std::from_chars(dims[d].data(), end, n[d]);
    if (ec != std::errc() || ptr != end || n[d] == 0) {
      fail_at(source, lines.front().number, d + 1, "bad tensor dimension '" + std::string(dims[d]) + "'");
    }
  }
  const std::vector<Line> body(lines.begin() + 1, lines.end());
  if (body.empty()) throw InputError(std::string(source) + ": tensor has no values");
  const Table t = parse_lines(body, source, Header::kForbidden);
  if (t.cols != n[2] || t.rows != n[0] * n[1]) {
    throw InputError(std::string(source) + ": expected " + std::to_string(n[0] * n[1]) +
                     " lines of " + std::to_string(n[2]) + " values, got " +
                     std::to_string(t.rows) + " of " + std::to_string(t.cols));
  }
  return TripleDist(n[0], n[1], n[2], t.values);
}

SampleSet parse_samples(std::string_view text, std::string_view source) {
  const Table t = parse_table(text, source, Header::kOptional);
  if (t.cols != 2) {
    throw InputError(std::string(source) + ": samples need 2 columns, got " +
                     std::to_string(t.cols));
  }
  if (t.rows < 2) throw InputError(std::string(source) + ": need at least 2 samples");
  SampleSet out(t.rows);
  for (std::size_t r = 0; r < t.rows; ++r) out[r] = {t(r, 0), t(r, 1)};
  return out;
}

JointDist read_joint(const std::string& path) { return parse_joint(read_text(path), path); }
Channel read_channel(const std::string& path) { return parse_channel(read_text(path), path); }
TripleDist read_tensor(const std::string& path) { return parse_tensor(read_text(path), path); }
SampleSet read_samples(const std::string& path) { return parse_samples(read_text(path), path); }

Table read_columns(const std::string& path) {
  return parse_table(read_text(path), path, Header::kOptional);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string report_tsv(const MixingReport& r) {
  return tsv(kReportHeader, std::vector<std::vector<std::string>>{report_fields(r)});
}

std::string bounds_tsv(const AlphaBounds& b) {
  return tsv({"lower", "upper", "lower_source", "upper_source", "c_gamma", "c_gamma_dual",
              "local_search", "sdp_lower", "sdp_upper", "beta_cap", "pinsker_cap",
              "sdp_converged", "newton_steps", "feasibility_margin", "flip_cap_hit"},
             std::vector<std::vector<std::string>>{
                 {format_double(b.lower), format_double(b.upper),
                  std::string(to_string(b.lower_source)), std::string(to_string(b.upper_source)),
                  format_double(b.c_gamma), format_double(b.c_gamma_dual),
                  format_double(b.local_search_value), format_double(b.sdp_lower),
                  format_double(b.sdp_upper), format_double(b.beta_cap),
                  format_double(b.pinsker_cap), flag(b.sdp_converged),
                  std::to_string(b.newton_steps), format_double(b.feasibility_margin),
                  flag(b.flip_cap_hit)}});
}

std::string dpi_tsv(const DpiReport& d) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : d.checks) {
    rows.push_back({std::string(c.name), format_double(c.lhs), format_double(c.rhs),
                    format_double(c.slack), std::string(to_string(c.verdict))});
  }
  return tsv({"inequality", "lhs", "rhs", "slack", "verdict"}, rows);
}

std::string edges_tsv(const EdgeList& e) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& edge : e.edges) {
    rows.push_back({std::to_string(edge.source), std::to_string(edge.target),
                    format_double(edge.weight), flag(edge.pruned)});
  }
  return tsv({"source", "target", "weight", "pruned"}, rows);
}

std::string trace_tsv(const EstimateTrace& t) {
  std::vector<std::string> header = {"samples", "bins"};
  header.insert(header.end(), kReportHeader.begin(), kReportHeader.end());
  header.push_back("naive_beta");
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : t) {
    std::vector<std::string> row = {std::to_string(r.samples), std::to_string(r.bins)};
    const auto fields = report_fields(r.report);
    row.insert(row.end(), fields.begin(), fields.end());
    row.push_back(r.naive_beta ? format_double(*r.naive_beta) : "NA");
    rows.push_back(std::move(row));
  }
  return tsv(header, rows);
}

}  // namespace io

void to_json(Json& j, const MixingReport& r) {
  j = Json{{"alpha", r.alpha()},
           {"alpha_lower", r.alpha_lower},
           {"alpha_upper", r.alpha_upper},
           {"alpha_is_exact", r.alpha_is_exact},
           {"beta", r.beta},
           {"phi_x_given_y", r.phi_x_given_y},
           {"phi_y_given_x", r.phi_y_given_x},
           {"mutual_information", r.mutual_information}};
}

void from_json(const Json& j, MixingReport& r) {
  j.at("alpha_lower").get_to(r.alpha_lower);
  j.at("alpha_upper").get_to(r.alpha_upper);
  j.at("alpha_is_exact").get_to(r.alpha_is_exact);
  j.at("beta").get_to(r.beta);
  j.at("phi_x_given_y").get_to(r.phi_x_given_y);
  j.at("phi_y_given_x").get_to(r.phi_y_given_x);
  j.at("mutual_information").get_to(r.mutual_information);
}

void to_json(Json& j, const AlphaBounds& b) {
  j = Json{{"lower", b.lower},
           {"upper", b.upper},
           {"lower_source", to_string(b.lower_source)},
           {"upper_source", to_string(b.upper_source)},
           {"c_gamma", b.c_gamma},
           {"c_gamma_dual", b.c_gamma_dual},
           {"local_search", b.local_search_value},
           {"sdp_lower", b.sdp_lower},
           {"sdp_upper", b.sdp_upper},
           {"beta_cap", b.beta_cap},
           {"pinsker_cap", b.pinsker_cap},
           {"sdp_converged", b.sdp_converged},
           {"newton_steps", b.newton_steps},
           {"feasibility_margin", b.feasibility_margin},
           {"flip_cap_hit", b.flip_cap_hit}};
}

void to_json(Json& j, const InequalityCheck& c) {
  j = Json{{"name", c.name},
           {"lhs", c.lhs},
           {"rhs", c.rhs},
           {"slack", c.slack},
           {"verdict", to_string(c.verdict)}};
}

void to_json(Json& j, const DpiReport& d) {
  j = Json{{"conditionally_independent", d.conditionally_independent},
           {"dims", {d.n, d.m, d.l}},
           {"xy", d.xy},
           {"yz", d.yz},
           {"xz", d.xz},
           {"checks", d.checks},
           {"all_pass", d.all_pass()}};
}

void to_json(Json& j, const Edge& e) {
  j = Json{{"source", e.source}, {"target", e.target}, {"weight", e.weight}, {"pruned", e.pruned}};
}

void to_json(Json& j, const EdgeList& e) {
  j = Json{{"variables", e.variables},
           {"samples", e.samples},
           {"bins", e.bins},
           {"edges", e.edges}};
}

void to_json(Json& j, const TraceRow& r) {
  j = Json{{"samples", r.samples}, {"bins", r.bins}, {"report", r.report}};
  j["naive_beta"] = r.naive_beta ? Json(*r.naive_beta) : Json(nullptr);
}

}  // namespace mixkit
