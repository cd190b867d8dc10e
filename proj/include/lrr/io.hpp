#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

namespace lrr::io {

// Matrix text format: first line "# <rows> <cols>", then row-major
// whitespace-separated decimals written with 17 significant digits.
void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(const std::filesystem::path& path);

// Vector text format: "# <len>" header, one value per line.
void write_vector(const std::filesystem::path& path, const Eigen::VectorXd& v);
Eigen::VectorXd read_vector(const std::filesystem::path& path);

// Index list, one 1-based index per line (0-based in memory).
void write_indices(const std::filesystem::path& path, const std::vector<long>& idx);
std::vector<long> read_indices(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace lrr::io
