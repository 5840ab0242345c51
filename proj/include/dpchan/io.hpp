#ifndef DPCHAN_IO_HPP
#define DPCHAN_IO_HPP

#include "dpchan/types.hpp"

#include <iosfwd>
#include <string>

namespace dpchan {

/// CSV channel-matrix format: header line `,out1,out2,...`; each following
/// line `inlabel,e1,e2,...`. Entries may be plain decimals or fractions a/b.
ChannelMatrix read_matrix_csv(std::istream& in);
ChannelMatrix read_matrix_csv_file(const std::string& path);

/// Writes the CSV format with 17 significant digits.
void write_matrix_csv(std::ostream& out, const ChannelMatrix& m);
void write_matrix_csv_file(const std::string& path, const ChannelMatrix& m);

/// Prior file format: one `label,probability` line per entry.
PriorDistribution read_prior_file(const std::string& path);

/// Prior specs: `uniform` | `file:PATH` | `p=0.1,0.2,...` (aligned with alphabet).
PriorDistribution parse_prior_spec(const std::string& spec, const Alphabet& alphabet);

/// Parses a decimal or a fraction `a/b`.
double parse_number(const std::string& token);

}  // namespace dpchan

#endif  // DPCHAN_IO_HPP
