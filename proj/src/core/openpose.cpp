#include "openpose.hpp"

#include <algorithm>
#include <charconv>
#include <json.hpp>
#include <map>

#include "error.hpp"
#include "hand_norm.hpp"

namespace posekit {

namespace {

using nlohmann::json;

const std::vector<std::string>& body25_names() {
  static const std::vector<std::string> names = {
      "Nose",   "Neck",    "RShoulder", "RElbow",    "RWrist", "LShoulder", "LElbow",
      "LWrist", "MidHip",  "RHip",      "RKnee",     "RAnkle", "LHip",      "LKnee",
      "LAnkle", "REye",    "LEye",      "REar",      "LEar",   "LBigToe",   "LSmallToe",
      "LHeel",  "RBigToe", "RSmallToe", "RHeel"};
  return names;
}

ComponentSpec body_component() {
  ComponentSpec c;
  c.name = kOpenPoseBody;
  c.format = "XYC";
  c.point_names = body25_names();
  c.limbs = {{1, 8},   {1, 2},   {1, 5},   {2, 3},   {3, 4},   {5, 6},   {6, 7},   {8, 9},
             {9, 10},  {10, 11}, {8, 12},  {12, 13}, {13, 14}, {1, 0},   {0, 15},  {15, 17},
             {0, 16},  {16, 18}, {14, 19}, {19, 20}, {14, 21}, {11, 22}, {22, 23}, {11, 24}};
  c.colors = {{255, 0, 85}, {255, 0, 0},   {255, 85, 0}, {255, 170, 0}, {255, 255, 0},
              {170, 255, 0}, {85, 255, 0}, {0, 255, 0},  {0, 255, 85},  {0, 255, 170},
              {0, 255, 255}, {0, 170, 255}, {0, 85, 255}, {0, 0, 255},  {255, 0, 170}};
  return c;
}

ComponentSpec face_component() {
  ComponentSpec c;
  c.name = kOpenPoseFace;
  c.format = "XYC";
  for (std::size_t i = 0; i < kOpenPoseFacePoints; ++i) c.point_names.push_back("F" + std::to_string(i));
  const auto chain = [&](std::uint16_t first, std::uint16_t last, bool closed) {
    for (std::uint16_t i = first; i < last; ++i) c.limbs.push_back({i, static_cast<std::uint16_t>(i + 1)});
    if (closed) c.limbs.push_back({last, first});
  };
  chain(0, 16, false);   // jaw
  chain(17, 21, false);  // eyebrows
  chain(22, 26, false);
  chain(27, 30, false);  // nose
  chain(31, 35, false);
  chain(36, 41, true);   // eyes
  chain(42, 47, true);
  chain(48, 59, true);   // lips
  chain(60, 67, true);
  c.colors = {{255, 255, 255}};
  return c;
}

ComponentSpec hand_component(std::string_view name) {
  ComponentSpec c;
  c.name = name;
  c.format = "XYC";
  const auto& names = hand_landmark_names();
  c.point_names.assign(names.begin(), names.end());
  for (std::uint16_t finger = 0; finger < 5; ++finger) {
    const auto base = static_cast<std::uint16_t>(1 + 4 * finger);
    c.limbs.push_back({0, base});
    for (std::uint16_t j = 0; j < 3; ++j) {
      c.limbs.push_back({static_cast<std::uint16_t>(base + j), static_cast<std::uint16_t>(base + j + 1)});
    }
  }
  c.colors = {{255, 0, 0}, {255, 255, 0}, {0, 255, 0}, {0, 255, 255}, {0, 0, 255}};
  return c;
}

std::size_t expected_points(std::string_view name) {
  if (name == kOpenPoseBody) return kOpenPoseBodyPoints;
  if (name == kOpenPoseFace) return kOpenPoseFacePoints;
  return kOpenPoseHandPoints;
}

const std::vector<std::string_view>& part_keys() {
  static const std::vector<std::string_view> keys = {kOpenPoseBody, kOpenPoseFace,
                                                     kOpenPoseLeftHand, kOpenPoseRightHand};
  return keys;
}

std::uint16_t u16_field(const json& root, const char* key, std::uint16_t fallback) {
  const auto it = root.find(key);
  if (it == root.end()) return fallback;
  if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0)) {
    throw Error(Errc::kBadSchema, std::string("'") + key + "' must be a non-negative integer");
  }
  const auto v = it->get<unsigned long long>();
  if (v > 65535) throw Error(Errc::kBadSchema, std::string("'") + key + "' exceeds 65535");
  return static_cast<std::uint16_t>(v);
}

}  // namespace

std::vector<ComponentSpec> openpose_components(OpenPoseParts parts) {
  std::vector<ComponentSpec> out;
  if (parts.body) out.push_back(body_component());
  if (parts.face) out.push_back(face_component());
  if (parts.left_hand) out.push_back(hand_component(kOpenPoseLeftHand));
  if (parts.right_hand) out.push_back(hand_component(kOpenPoseRightHand));
  return out;
}

Pose ingest_openpose(std::string_view text, std::optional<std::size_t> people) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::kBadSchema, std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("frames") || !root["frames"].is_object()) {
    throw Error(Errc::kBadSchema, "expected an object with a 'frames' object");
  }

  std::map<std::size_t, const json*> frames;
  for (const auto& [key, value] : root["frames"].items()) {
    std::size_t index = 0;
    const auto res = std::from_chars(key.data(), key.data() + key.size(), index);
    if (key.empty() || res.ec != std::errc() || res.ptr != key.data() + key.size()) {
      throw Error(Errc::kBadSchema, "frame key '" + key + "' is not a decimal index");
    }
    if (!value.is_object() || !value.contains("people") || !value["people"].is_array()) {
      throw Error(Errc::kBadSchema, "frame '" + key + "' needs a 'people' array");
    }
    frames[index] = &value;
  }

  OpenPoseParts parts{false, false, false, false};
  std::size_t max_people = 0;
  for (const auto& [index, frame] : frames) {
    const auto& list = (*frame)["people"];
    max_people = std::max(max_people, list.size());
    for (const auto& person : list) {
      if (!person.is_object()) throw Error(Errc::kBadSchema, "person entries must be objects");
      const auto has = [&](std::string_view key) {
        const auto it = person.find(std::string(key));
        return it != person.end() && it->is_array() && !it->empty();
      };
      parts.body = parts.body || has(kOpenPoseBody);
      parts.face = parts.face || has(kOpenPoseFace);
      parts.left_hand = parts.left_hand || has(kOpenPoseLeftHand);
      parts.right_hand = parts.right_hand || has(kOpenPoseRightHand);
    }
  }

  PoseHeader header;
  header.width = u16_field(root, "width", 0);
  header.height = u16_field(root, "height", 0);
  header.components = openpose_components(parts);
  const std::size_t n_people = people.value_or(max_people);
  Pose pose = Pose::empty_like(header, u16_field(root, "fps", 25), frames.size(), n_people);
  auto& body = pose.body;

  std::size_t f = 0;
  for (const auto& [index, frame] : frames) {
    const auto& list = (*frame)["people"];
    for (std::size_t p = 0; p < std::min(n_people, list.size()); ++p) {
      const auto& person = list[p];
      std::size_t offset = 0;
      for (const auto& comp : header.components) {
        const auto it = person.find(comp.name);
        if (it != person.end() && !it->is_array()) {
          throw Error(Errc::kBadSchema, "'" + comp.name + "' must be an array");
        }
        if (it != person.end() && !it->empty()) {
          const std::size_t expected = expected_points(comp.name);
          if (it->size() % 3 != 0 || it->size() / 3 != expected) {
            throw Error(Errc::kRaggedKeypoints,
                        "frame " + std::to_string(index) + " '" + comp.name + "' has " +
                            std::to_string(it->size()) + " values, expected " +
                            std::to_string(3 * expected));
          }
          for (std::size_t k = 0; k < expected; ++k) {
            const auto& x = (*it)[3 * k];
            const auto& y = (*it)[3 * k + 1];
            const auto& c = (*it)[3 * k + 2];
            if (!x.is_number() || !y.is_number() || !c.is_number()) {
              throw Error(Errc::kBadSchema, "keypoint values must be numbers");
            }
            auto pt = body.point(f, p, offset + k);
            pt[0] = static_cast<float>(x.get<double>());
            pt[1] = static_cast<float>(y.get<double>());
            body.conf(f, p, offset + k) = static_cast<float>(c.get<double>());
          }
        }
        offset += comp.point_count();
      }
    }
    ++f;
  }
  return pose;
}

namespace {

void append_number(std::string& out, float value, std::optional<int> decimals) {
  char buf[64];
  std::to_chars_result res;
  if (decimals) {
    res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(value), std::chars_format::fixed,
                        *decimals);
  } else {
    res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(value));
  }
  out.append(buf, res.ptr);
}

}  // namespace

std::string export_openpose(const Pose& pose, const JsonNumberFormat& format) {
  for (const auto& comp : pose.header.components) {
    const auto& keys = part_keys();
    if (std::find(keys.begin(), keys.end(), comp.name) == keys.end() ||
        comp.point_count() != expected_points(comp.name) || comp.axis_count() != 2) {
      throw Error(Errc::kBadSchema, "component '" + comp.name + "' is not an OpenPose 2-D part");
    }
  }
  const auto& b = pose.body;
  std::string out;
  out.reserve(64 + b.frames * b.people * b.points * 24);
  out += "{\"version\":1.3,\"fps\":" + std::to_string(b.fps) +
         ",\"width\":" + std::to_string(pose.header.width) +
         ",\"height\":" + std::to_string(pose.header.height) + ",\"frames\":{";
  for (std::size_t f = 0; f < b.frames; ++f) {
    if (f) out += ',';
    out += '"' + std::to_string(f) + "\":{\"people\":[";
    for (std::size_t p = 0; p < b.people; ++p) {
      if (p) out += ',';
      out += "{\"person_id\":[-1]";
      std::size_t offset = 0;
      for (const auto& comp : pose.header.components) {
        out += ",\"" + comp.name + "\":[";
        for (std::size_t k = offset; k < offset + comp.point_count(); ++k) {
          if (k != offset) out += ',';
          const auto pt = b.point(f, p, k);
          append_number(out, pt[0], format.coordinate_decimals);
          out += ',';
          append_number(out, pt[1], format.coordinate_decimals);
          out += ',';
          append_number(out, b.conf(f, p, k), format.confidence_decimals);
        }
        out += ']';
        offset += comp.point_count();
      }
      out += ",\"pose_keypoints_3d\":[],\"face_keypoints_3d\":[],"
             "\"hand_left_keypoints_3d\":[],\"hand_right_keypoints_3d\":[]}";
    }
    out += "]}";
  }
  out += "}}\n";
  return out;
}

}  // namespace posekit
