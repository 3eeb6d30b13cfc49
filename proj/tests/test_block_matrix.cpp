#include "doctest.h"

#include "mggm/block_matrix.hpp"
#include "test_helpers.hpp"

using namespace mggm;

TEST_CASE("block matrix validates its shape") {
  CHECK_THROWS_AS(BlockMatrix(Eigen::MatrixXd::Zero(3, 3), 2, 2), InvalidInputError);
  CHECK_THROWS_AS(BlockMatrix(Eigen::MatrixXd::Zero(4, 4), 0, 4), InvalidInputError);
  const BlockMatrix a = BlockMatrix::Identity(2, 2);
  CHECK(a.dim() == 4);
  CHECK(a.block(0, 1).norm() == 0.0);
  CHECK(a.block(1, 1).isIdentity(0.0));
}

TEST_CASE("symmetrize and symmetry detection") {
  Eigen::MatrixXd d(2, 2);
  d << 1.0, 2.0, 0.0, 1.0;
  BlockMatrix a(d, 2, 1);
  CHECK_FALSE(a.is_symmetric());
  CHECK_THROWS_AS(a.require_symmetric("test"), InvalidInputError);
  a.symmetrize();
  CHECK(a.is_symmetric());
  CHECK(a.data()(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("csv and binary round trips") {
  mggm::Rng rng(11);
  BlockMatrix a(test_helpers::random_symmetric(6, rng), 3, 2);
  const auto dir = test_helpers::scratch_dir("bm");

  a.save_csv(dir / "a.csv");
  const BlockMatrix b = BlockMatrix::load_csv(dir / "a.csv");
  CHECK(b.p() == 3);
  CHECK(b.m() == 2);
  CHECK((a.data() - b.data()).cwiseAbs().maxCoeff() == 0.0);

  a.save_binary(dir / "a.bin");
  const BlockMatrix c = BlockMatrix::load_binary(dir / "a.bin");
  CHECK((a.data() - c.data()).cwiseAbs().maxCoeff() == 0.0);  // bit-exact

  CHECK_THROWS_AS(BlockMatrix::load_csv(dir / "missing.csv"), DataError);
  CHECK_THROWS_AS(BlockMatrix::load_binary(dir / "a.csv"), DataError);
  std::filesystem::remove_all(dir);
}
