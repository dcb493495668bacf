#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace holmc {

// Rows of z are observations with entries in {-1,+1}; y holds labels in {0,1}.
struct LogisticDataset {
  Eigen::MatrixXd z;
  std::vector<int> y;

  int count() const { return static_cast<int>(z.rows()); }
  int dimension() const { return static_cast<int>(z.cols()); }
  void validate() const;
};

void write_dataset_csv(const LogisticDataset& data, const std::string& path);
LogisticDataset read_dataset_csv(const std::string& path);

}  // namespace holmc
