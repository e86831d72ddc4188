#include "lieq/g2_table.hpp"

namespace lieq::detail {

// Split g2 inside gl(7): derivations of the split octonions restricted to the
// trace-zero part, written in a basis in which the algebra is closed under
// matrix transpose (E_{-beta} = E_beta^T) and the Frobenius pairing has
// orthogonal root spaces. Integer matrices, primitive scale, signs fixed by
// first nonzero entry. Validated by the construction self-tests.

namespace {
const int H1[7][7] = {
    {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0},  {0, 0, 0, 0, 0, -1, 0},
    {0, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0},  {0, 0, -1, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0}};
const int H2[7][7] = {
    {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0},  {0, 0, 0, 0, 0, 1, 0},
    {0, 0, 0, 0, 0, 0, -1}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0},
    {0, 0, 0, -1, 0, 0, 0}};

// positive root vectors; coords over (alpha1, alpha2), heights 1,1,2,3,4,5
const int E10[7][7] = {
    {0, 2, 0, 0, -2, 0, 0}, {-2, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 1},
    {0, 0, -1, 0, 0, -1, 0}, {-2, 0, 0, 0, 0, 0, 0}, {0, 0, 0, -1, 0, 0, -1},
    {0, 0, 1, 0, 0, 1, 0}};
const int E01[7][7] = {
    {0, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, -1, 0}, {0, -1, 0, 0, -1, 0, 0},
    {0, 0, 0, 0, 0, 0, 0}, {0, 0, -1, 0, 0, 1, 0}, {0, -1, 0, 0, -1, 0, 0},
    {0, 0, 0, 0, 0, 0, 0}};
const int E11[7][7] = {
    {0, 0, 2, 0, 0, -2, 0}, {0, 0, 0, -1, 0, 0, -1}, {-2, 0, 0, 0, 0, 0, 0},
    {0, 1, 0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 1}, {-2, 0, 0, 0, 0, 0, 0},
    {0, -1, 0, 0, -1, 0, 0}};
const int E21[7][7] = {
    {0, 0, 0, 2, 0, 0, 2}, {0, 0, 1, 0, 0, -1, 0}, {0, -1, 0, 0, 1, 0, 0},
    {-2, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, -1, 0}, {0, -1, 0, 0, 1, 0, 0},
    {2, 0, 0, 0, 0, 0, 0}};
const int E31[7][7] = {
    {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 0},
    {0, -1, 0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 0},
    {0, 1, 0, 0, -1, 0, 0}};
const int E32[7][7] = {
    {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 1},
    {0, 0, -1, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 1},
    {0, 0, 1, 0, 0, -1, 0}};

QMat to_qmat(const int (&m)[7][7]) {
  QMat q(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) q.at(i, j) = m[i][j];
  return q;
}
}  // namespace

std::vector<QMat> g2_cartan() { return {to_qmat(H1), to_qmat(H2)}; }

std::vector<G2Row> g2_positive_roots() {
  std::vector<G2Row> out;
  out.push_back({{1, 0}, {QQ(1), QQ(0)}, to_qmat(E10)});
  out.push_back({{0, 1}, {QQ(-2), QQ(1)}, to_qmat(E01)});
  out.push_back({{1, 1}, {QQ(-1), QQ(1)}, to_qmat(E11)});
  out.push_back({{2, 1}, {QQ(0), QQ(1)}, to_qmat(E21)});
  out.push_back({{3, 1}, {QQ(1), QQ(1)}, to_qmat(E31)});
  out.push_back({{3, 2}, {QQ(-1), QQ(2)}, to_qmat(E32)});
  return out;
}

}  // namespace lieq::detail
