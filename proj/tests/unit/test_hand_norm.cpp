#include <doctest.h>

#include <cmath>
#include <random>

#include "error.hpp"
#include "fixtures.hpp"
#include "hand_norm.hpp"
#include "oracles.hpp"

using namespace posekit;
using Eigen::Vector3d;

namespace {

HandPose with_mcp(const Vector3d& wrist, const Vector3d& m_mcp) {
  auto pts = fixture::canonical_hand();
  pts[kWrist] = wrist;
  pts[kMiddleMcp] = m_mcp;
  return HandPose::from_points(pts);
}

// Wall hand (M_MCP straight up) whose palm normal has the given XZ angle.
HandPose wall_with_normal_angle(double deg) {
  const double r = deg * M_PI / 180.0;
  const Vector3d n(std::cos(r), 0.0, std::sin(r));
  // Palm spans +Y and n x Y so that (I - W) x (P - W) is along n.
  const Vector3d side = Vector3d::UnitY().cross(n);
  auto pts = fixture::canonical_hand();
  pts[kWrist] = Vector3d::Zero();
  pts[kMiddleMcp] = Vector3d(0, 200, 0);
  pts[kIndexMcp] = 190 * Vector3d::UnitY() + 40 * side;
  pts[kPinkyMcp] = 170 * Vector3d::UnitY() - 60 * side;
  return HandPose::from_points(pts);
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kOk;
}

oracle::Vec3 v3(const Vector3d& v) { return {v.x(), v.y(), v.z()}; }

void check_close(const HandPose& a, const std::array<Vector3d, kHandLandmarks>& b, double tol) {
  for (std::size_t i = 0; i < kHandLandmarks; ++i) {
    CHECK((a.landmarks[i] - b[i]).norm() <= tol);
  }
}

}  // namespace

TEST_CASE("landmark names") {
  CHECK(hand_landmark_names()[kWrist] == "WRIST");
  CHECK(hand_landmark_names()[kMiddleMcp] == "MIDDLE_FINGER_MCP");
  CHECK(hand_landmark_names()[20] == "PINKY_TIP");
}

TEST_CASE("estimate_plane") {
  const Vector3d w(1, 2, 3);
  CHECK(estimate_plane(with_mcp(w, w + Vector3d(0, 10, 0))) == HandPlane::kWall);
  CHECK(estimate_plane(with_mcp(w, w + Vector3d(0, 1, 10))) == HandPlane::kFloor);
  // 2 * 1.5 == 3: strict comparison sends the tie to Floor.
  CHECK(estimate_plane(with_mcp(Vector3d::Zero(), Vector3d(0, 2, 3))) == HandPlane::kFloor);
  HandPose missing = with_mcp(w, w + Vector3d(0, 1, 0));
  missing.confidence[kMiddleMcp] = 0.0f;
  CHECK(code_of([&] { estimate_plane(missing); }) == Errc::kMissingLandmark);
}

TEST_CASE("rotation bins") {
  CHECK(estimate_rotation_bin(with_mcp(Vector3d::Zero(), Vector3d(0, 10, 0))) == 0);
  CHECK(rotation_bin_from_angle(90.0) == 2);
  CHECK(rotation_bin_from_angle(22.5) == 1);
  CHECK(rotation_bin_from_angle(22.4999) == 0);
  CHECK(rotation_bin_from_angle(337.5) == 0);
  CHECK(rotation_bin_from_angle(337.4999) == 7);
  // Counterclockwise from +Y: pointing to -X is 90 degrees.
  CHECK(rotation_angle_deg(with_mcp(Vector3d::Zero(), Vector3d(-10, 0.1, 0))) ==
        doctest::Approx(90.0).epsilon(1e-2));
  CHECK(code_of([&] { estimate_rotation_bin(with_mcp(Vector3d::Zero(), Vector3d(0, 0, 0))); }) ==
        Errc::kDegenerateDirection);
}

TEST_CASE("estimate_view thresholds") {
  CHECK(view_angle_deg(wall_with_normal_angle(300)) == doctest::Approx(300));
  CHECK(estimate_view(wall_with_normal_angle(300)) == HandView::kFront);
  CHECK(estimate_view(wall_with_normal_angle(180)) == HandView::kSideways);
  CHECK(estimate_view(wall_with_normal_angle(90)) == HandView::kBack);

  // Floor hand: M_MCP along +Z, normal in the XY plane at -90 degrees.
  auto pts = fixture::canonical_hand();
  pts[kWrist] = Vector3d::Zero();
  pts[kMiddleMcp] = Vector3d(0, 0, 200);
  pts[kIndexMcp] = Vector3d(0, 0, 190) + Vector3d(40, 0, 0);   // (I-W) x (P-W) = -Y
  pts[kPinkyMcp] = Vector3d(0, 0, 170) + Vector3d(-60, 0, 0);
  const HandPose floor = HandPose::from_points(pts);
  REQUIRE(estimate_plane(floor) == HandPlane::kFloor);
  CHECK(view_angle_deg(floor) == doctest::Approx(-90));
  CHECK(estimate_view(floor) == HandView::kBack);

  auto line = fixture::canonical_hand();
  line[kIndexMcp] = Vector3d(0, 100, 0);
  line[kPinkyMcp] = Vector3d(0, 50, 0);
  CHECK(code_of([&] { estimate_view(HandPose::from_points(line)); }) == Errc::kCollinearLandmarks);
}

TEST_CASE("estimators agree with the reference arithmetic on random hands") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-100, 100);
  int mismatches = 0;
  for (int n = 0; n < 2000; ++n) {
    auto pts = fixture::canonical_hand();
    for (auto i : {kWrist, kIndexMcp, kMiddleMcp, kPinkyMcp}) pts[i] = Vector3d(u(rng), u(rng), u(rng));
    const HandPose h = HandPose::from_points(pts);
    const auto w = v3(pts[kWrist]), m = v3(pts[kMiddleMcp]);
    mismatches += to_string(estimate_plane(h)) != oracle::plane(w, m);
    mismatches += estimate_rotation_bin(h) != oracle::rotation_bin(w, m);
    mismatches += to_string(estimate_view(h)) !=
                  oracle::view(w, v3(pts[kIndexMcp]), v3(pts[kPinkyMcp]), m);
  }
  CHECK(mismatches == 0);
}

TEST_CASE("normalize_hand_3d") {
  const auto canon = fixture::canonical_hand();
  const HandPose c = HandPose::from_points(canon);

  SUBCASE("canonical hand is a fixed point") { check_close(normalize_hand_3d(c), canon, 1e-5); }

  SUBCASE("invariants hold") {
    std::mt19937_64 rng(1);
    const auto moved = fixture::transform(canon, fixture::random_rotation(rng), 0.37, Vector3d(5, -9, 2));
    const HandPose n = normalize_hand_3d(HandPose::from_points(moved));
    CHECK(n.landmarks[kWrist].norm() <= 1e-6);
    CHECK(std::abs(n.landmarks[kMiddleMcp].x()) <= 1e-6);
    CHECK(std::abs(n.landmarks[kMiddleMcp].z()) <= 1e-6);
    CHECK(std::abs(n.landmarks[kMiddleMcp].norm() - 200.0) <= 1e-3);
  }

  SUBCASE("rotation and scale 3 are undone") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
      const auto moved = fixture::transform(canon, fixture::random_rotation(rng), 3.0,
                                            Vector3d(10.0 * i, -4, 7));
      check_close(normalize_hand_3d(HandPose::from_points(moved)), canon, 1e-4);
    }
  }

  SUBCASE("idempotent") {
    std::mt19937_64 rng(5);
    const auto moved = fixture::transform(canon, fixture::random_rotation(rng), 1.7, Vector3d(1, 2, 3));
    const HandPose once = normalize_hand_3d(HandPose::from_points(moved));
    check_close(normalize_hand_3d(once), once.landmarks, 1e-5);
  }

  SUBCASE("left and right mirror pair normalize to x-mirrors") {
    auto mirrored = canon;
    for (auto& p : mirrored) p.x() = -p.x();
    std::mt19937_64 rng(8);
    const Eigen::Matrix3d r = fixture::random_rotation(rng);
    const HandPose right = normalize_hand_3d(
        HandPose::from_points(fixture::transform(canon, r, 2.0, Vector3d(1, 1, 1))));
    const HandPose left = normalize_hand_3d(HandPose::from_points(
        fixture::transform(mirrored, r, 2.0, Vector3d(1, 1, 1)), Handedness::kLeft));
    for (std::size_t i = 0; i < kHandLandmarks; ++i) {
      CHECK(std::abs(left.landmarks[i].x() + right.landmarks[i].x()) < 1e-4);
      CHECK(std::abs(left.landmarks[i].y() - right.landmarks[i].y()) < 1e-4);
      CHECK(std::abs(left.landmarks[i].z() - right.landmarks[i].z()) < 1e-4);
    }
  }

  SUBCASE("errors") {
    auto same = canon;
    same[kMiddleMcp] = same[kWrist];
    CHECK(code_of([&] { normalize_hand_3d(HandPose::from_points(same)); }) ==
          Errc::kDegenerateMetacarpal);
    auto line = canon;
    line[kIndexMcp] = Vector3d(0, 100, 0);
    line[kPinkyMcp] = Vector3d(0, 50, 0);
    CHECK(code_of([&] { normalize_hand_3d(HandPose::from_points(line)); }) ==
          Errc::kCollinearLandmarks);
  }
}

TEST_CASE("mace") {
  const auto canon = fixture::canonical_hand();
  SUBCASE("duplicates give zero") {
    HandShapeGroup g{"v", std::vector<HandPose>(6, HandPose::from_points(canon))};
    CHECK(mace(g) == doctest::Approx(0.0));
  }
  SUBCASE("rigid views give almost zero") {
    std::mt19937_64 rng(3);
    HandShapeGroup g{"v", {}};
    for (int i = 0; i < 6; ++i) {
      g.observations.push_back(HandPose::from_points(
          fixture::transform(canon, fixture::random_rotation(rng), 0.5 + i, Vector3d(i, -i, 2 * i))));
    }
    CHECK(mace(g) <= 1e-3);
  }
  SUBCASE("one landmark shifted by 10 along x") {
    auto shifted = canon;
    shifted[8].x() += 10;
    HandShapeGroup g{"v", {HandPose::from_points(canon), HandPose::from_points(shifted)}};
    CHECK(std::abs(mace(g) - 5.0 / 21.0) < 1e-9);
  }
  SUBCASE("failed observations are dropped") {
    auto bad = canon;
    bad[kMiddleMcp] = bad[kWrist];
    HandShapeGroup g{"v", {HandPose::from_points(canon), HandPose::from_points(bad),
                           HandPose::from_points(canon)}};
    std::vector<std::size_t> dropped;
    CHECK(mace(g, &dropped) == doctest::Approx(0.0));
    CHECK(dropped == std::vector<std::size_t>{1});
    HandShapeGroup two{"v", {HandPose::from_points(canon), HandPose::from_points(bad)}};
    CHECK(code_of([&] { mace(two); }) == Errc::kInsufficientObservations);
  }
  CHECK(code_of([&] { mace({"v", {HandPose::from_points(canon)}}); }) ==
        Errc::kInsufficientObservations);
}

TEST_CASE("cce") {
  const auto canon = fixture::canonical_hand();
  const HandPose a = HandPose::from_points(canon);
  CHECK(cce({"v", {a, a, a}}) == 0.0);
  const HandPose moved =
      HandPose::from_points(fixture::transform(canon, Eigen::Matrix3d::Identity(), 1.0, Vector3d(30, -7, 2)));
  CHECK(cce({"v", {a, moved}}) == doctest::Approx(0.0).epsilon(1e-12));

  // Scale 2 about the wrist: each landmark sits at p and 2p, RMS distance |p|/2.
  const HandPose big =
      HandPose::from_points(fixture::transform(canon, Eigen::Matrix3d::Identity(), 2.0, Vector3d::Zero()));
  double expect = 0;
  for (const auto& p : canon) expect += p.norm() / 2.0;
  expect /= 21.0;
  CHECK(cce({"v", {a, big}}) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(cce({"v", {a, big}}) > 0.0);
  CHECK(code_of([&] { cce({"v", {a}}); }) == Errc::kInsufficientObservations);
}

TEST_CASE("hands inside poses") {
  PoseHeader h;
  ComponentSpec c;
  c.name = "right_hand";
  c.format = "XYZC";
  c.point_names.assign(hand_landmark_names().begin(), hand_landmark_names().end());
  h.components.push_back(c);
  Pose p = Pose::empty_like(h, 25, 2, 1);
  std::mt19937_64 rng(4);
  const auto canon = fixture::canonical_hand();
  const auto moved = fixture::transform(canon, fixture::random_rotation(rng), 0.8, Vector3d(3, 3, 3));
  for (std::size_t k = 0; k < kHandLandmarks; ++k) {
    auto pt = p.body.point(0, 0, k);
    for (int x = 0; x < 3; ++x) pt[x] = static_cast<float>(moved[k][x]);
    p.body.conf(0, 0, k) = 1.0f;
  }
  // Frame 1 stays empty: normalization leaves it alone.
  const Pose n = normalize_hands_in_pose(p, "right_hand", handedness_from_name("right_hand"));
  const HandPose back = hand_from_pose(n, "right_hand", 0, 0, Handedness::kRight);
  check_close(back, canon, 1e-3);
  for (std::size_t k = 0; k < kHandLandmarks; ++k) CHECK(n.body.conf(1, 0, k) == 0.0f);

  CHECK(handedness_from_name("hand_left_keypoints_2d") == Handedness::kLeft);
  CHECK(handedness_from_name("LeftHand") == Handedness::kLeft);
  CHECK(handedness_from_name("right") == Handedness::kRight);
  CHECK(code_of([&] { hand_from_pose(p, "nosuch", 0, 0, Handedness::kRight); }) ==
        Errc::kUnknownComponent);
}
