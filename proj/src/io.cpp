#include "dpchan/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace dpchan {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

double parse_number(const std::string& token) {
  const std::string t = strip(token);
  const auto slash = t.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(t.substr(0, slash));
      const double den = std::stod(t.substr(slash + 1));
      if (den == 0.0) throw Error("fraction with zero denominator: " + token);
      return num / den;
    }
    size_t used = 0;
    const double value = std::stod(t, &used);
    if (used != t.size()) throw Error("trailing characters in number: " + token);
    return value;
  } catch (const std::invalid_argument&) {
    throw Error("cannot parse number: " + token);
  } catch (const std::out_of_range&) {
    throw Error("number out of range: " + token);
  }
}

ChannelMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("empty matrix stream");
  auto header = split(strip(line), ',');
  if (header.empty() || !strip(header[0]).empty())
    throw Error("matrix header must start with an empty cell");
  std::vector<std::string> out_labels(header.begin() + 1, header.end());
  for (auto& l : out_labels) l = strip(l);

  std::vector<std::string> in_labels;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    const std::string s = strip(line);
    if (s.empty()) continue;
    auto cells = split(s, ',');
    if (cells.size() != out_labels.size() + 1)
      throw Error("matrix row has wrong cell count: " + s);
    in_labels.push_back(strip(cells[0]));
    std::vector<double> row;
    for (size_t j = 1; j < cells.size(); ++j) row.push_back(parse_number(cells[j]));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("matrix has no rows");
  Eigen::MatrixXd p(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(out_labels.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return ChannelMatrix(Alphabet(std::move(in_labels)), Alphabet(std::move(out_labels)),
                       std::move(p));
}

ChannelMatrix read_matrix_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read matrix file: " + path);
  return read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const ChannelMatrix& m) {
  out << "";
  for (Eigen::Index j = 0; j < m.cols(); ++j) out << "," << m.output.label(j);
  out << "\n";
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << m.input.label(i);
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << "," << m.p(i, j);
    out << "\n";
  }
}

void write_matrix_csv_file(const std::string& path, const ChannelMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write matrix file: " + path);
  write_matrix_csv(out, m);
}

PriorDistribution read_prior_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read prior file: " + path);
  std::vector<std::string> labels;
  std::vector<double> probs;
  std::string line;
  while (std::getline(in, line)) {
    const std::string s = strip(line);
    if (s.empty()) continue;
    const auto sep = s.find(',');
    if (sep == std::string::npos) throw Error("bad prior line: " + s);
    labels.push_back(strip(s.substr(0, sep)));
    probs.push_back(parse_number(s.substr(sep + 1)));
  }
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(probs.data(), static_cast<Eigen::Index>(probs.size()));
  return PriorDistribution(Alphabet(std::move(labels)), std::move(v));
}

PriorDistribution parse_prior_spec(const std::string& spec, const Alphabet& alphabet) {
  if (spec == "uniform") return PriorDistribution::uniform(alphabet);
  if (spec.rfind("file:", 0) == 0) {
    PriorDistribution p = read_prior_file(spec.substr(5));
    if (p.alphabet() != alphabet)
      throw AlphabetMismatch("prior file labels do not match the channel input");
    return p;
  }
  if (spec.rfind("p=", 0) == 0) {
    const auto cells = split(spec.substr(2), ',');
    if (static_cast<Eigen::Index>(cells.size()) != alphabet.size())
      throw Error("inline prior has wrong length");
    Eigen::VectorXd v(alphabet.size());
    for (size_t i = 0; i < cells.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_number(cells[i]);
    return PriorDistribution(alphabet, std::move(v));
  }
  throw Error("unknown prior spec: " + spec);
}

}  // namespace dpchan
