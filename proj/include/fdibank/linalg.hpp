#pragma once

#include <Eigen/Dense>

namespace fdi {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

}  // namespace fdi
