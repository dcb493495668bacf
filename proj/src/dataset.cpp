#include "holmc/dataset.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace holmc {

void LogisticDataset::validate() const {
  if (z.rows() == 0) throw std::invalid_argument("logistic dataset is empty");
  if (z.cols() == 0) throw std::invalid_argument("logistic dataset has zero features");
  if (static_cast<Eigen::Index>(y.size()) != z.rows())
    throw std::invalid_argument("logistic dataset: feature and label counts differ");
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index j = 0; j < z.cols(); ++j)
      if (z(i, j) != 1.0 && z(i, j) != -1.0)
        throw std::invalid_argument("logistic dataset: feature entries must be +1 or -1");
    if (y[i] != 0 && y[i] != 1) throw std::invalid_argument("logistic dataset: labels must be 0 or 1");
  }
}

void write_dataset_csv(const LogisticDataset& data, const std::string& path) {
  data.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (int i = 0; i < data.count(); ++i) {
    for (int j = 0; j < data.dimension(); ++j) out << static_cast<int>(data.z(i, j)) << ',';
    out << data.y[i] << '\n';
  }
}

LogisticDataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() < 2) throw std::invalid_argument("dataset row needs at least one feature and a label");
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("dataset rows have inconsistent widths");
    rows.push_back(std::move(row));
  }
  LogisticDataset data;
  if (rows.empty()) throw std::invalid_argument("logistic dataset is empty");
  const auto d = static_cast<Eigen::Index>(rows.front().size() - 1);
  data.z.resize(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index j = 0; j < d; ++j) data.z(static_cast<Eigen::Index>(i), j) = rows[i][j];
    const double lab = rows[i].back();
    if (lab != 0.0 && lab != 1.0) throw std::invalid_argument("logistic dataset: labels must be 0 or 1");
    data.y.push_back(static_cast<int>(lab));
  }
  data.validate();
  return data;
}

}  // namespace holmc
