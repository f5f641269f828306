#ifndef MIXKIT_IO_HPP_
#define MIXKIT_IO_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mixkit/alpha_bounds.hpp"
#include "mixkit/dpi.hpp"
#include "mixkit/estimator.hpp"
#include "mixkit/mixing_exact.hpp"
#include "mixkit/pairwise.hpp"

namespace mixkit {

using Json = nlohmann::json;

namespace io {

// Dense numeric table. The delimiter (comma, tab, or runs of blanks) is
// taken from the first data line; blank lines and lines starting with '#'
// are skipped. Parse errors name the source, line, and column.
struct Table {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;       // row-major
  std::vector<std::string> header;  // empty unless a header line was found

  double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::vector<double> column(std::size_t c) const;
};

enum class Header { kForbidden, kOptional };

Table parse_table(std::string_view text, std::string_view source,
                  Header header = Header::kForbidden);

// Whole file as text; InputError if it cannot be opened.
std::string read_text(const std::string& path);

JointDist parse_joint(std::string_view text, std::string_view source);
Channel parse_channel(std::string_view text, std::string_view source);
// Header "n m l", then n m lines of l values with i major and j minor.
TripleDist parse_tensor(std::string_view text, std::string_view source);
// Two numeric columns x, y; at least two rows.
SampleSet parse_samples(std::string_view text, std::string_view source);

JointDist read_joint(const std::string& path);
Channel read_channel(const std::string& path);
TripleDist read_tensor(const std::string& path);
SampleSet read_samples(const std::string& path);
Table read_columns(const std::string& path);

std::string format_double(double v);  // %.17g

// Indented JSON with a trailing newline.
std::string dump(const Json& j);

std::string report_tsv(const MixingReport& r);
std::string bounds_tsv(const AlphaBounds& b);
std::string dpi_tsv(const DpiReport& d);
std::string edges_tsv(const EdgeList& e);
std::string trace_tsv(const EstimateTrace& t);

}  // namespace io

void to_json(Json& j, const MixingReport& r);
void from_json(const Json& j, MixingReport& r);
void to_json(Json& j, const AlphaBounds& b);
void to_json(Json& j, const InequalityCheck& c);
void to_json(Json& j, const DpiReport& d);
void to_json(Json& j, const Edge& e);
void to_json(Json& j, const EdgeList& e);
void to_json(Json& j, const TraceRow& r);

}  // namespace mixkit

#endif  // MIXKIT_IO_HPP_
