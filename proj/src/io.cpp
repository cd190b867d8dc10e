#include "lrr/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lrr::io {

namespace {

std::string format17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& why) {
  throw std::runtime_error(path.string() + ": " + why);
}

}  // namespace

void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  out << "# " << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format17(m(i, j));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open for reading");
  char hash = 0;
  Eigen::Index rows = 0, cols = 0;
  in >> hash >> rows >> cols;
  if (hash != '#' || rows < 0 || cols < 0) fail(path, "bad matrix header");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!(in >> m(i, j))) fail(path, "truncated matrix body");
  return m;
}

void write_vector(const std::filesystem::path& path, const Eigen::VectorXd& v) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  out << "# " << v.size() << '\n';
  for (Eigen::Index i = 0; i < v.size(); ++i) out << format17(v(i)) << '\n';
}

Eigen::VectorXd read_vector(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open for reading");
  char hash = 0;
  Eigen::Index len = 0;
  in >> hash >> len;
  if (hash != '#' || len < 0) fail(path, "bad vector header");
  Eigen::VectorXd v(len);
  for (Eigen::Index i = 0; i < len; ++i)
    if (!(in >> v(i))) fail(path, "truncated vector body");
  return v;
}

void write_indices(const std::filesystem::path& path, const std::vector<long>& idx) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  for (long i : idx) out << (i + 1) << '\n';
}

std::vector<long> read_indices(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open for reading");
  std::vector<long> idx;
  long v = 0;
  while (in >> v) {
    if (v < 1) fail(path, "index must be 1-based positive");
    idx.push_back(v - 1);
  }
  return idx;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  out << text;
}

}  // namespace lrr::io
