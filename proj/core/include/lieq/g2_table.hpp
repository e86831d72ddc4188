#pragma once

#include <vector>

#include "lieq/qmat.hpp"

namespace lieq::detail {

struct G2Row {
  std::vector<int> coords;  // over the two simple roots
  QVec h_values;            // values on the cartan basis below
  QMat e;                   // positive root vector; negative is e^T
};

std::vector<QMat> g2_cartan();
std::vector<G2Row> g2_positive_roots();

}  // namespace lieq::detail
