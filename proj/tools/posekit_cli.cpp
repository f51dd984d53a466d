#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "posekit/posekit.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Carries an exit code out of a subcommand handler.
struct Exit {
  int code;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& message) { throw Exit{kExitUsage, message}; }

void check(pk_status status) {
  if (status != PK_OK) throw Exit{kExitData, pk_last_error()};
}

struct PoseDeleter {
  void operator()(pk_pose* p) const { pk_pose_destroy(p); }
};
using PosePtr = std::unique_ptr<pk_pose, PoseDeleter>;

struct FreeDeleter {
  void operator()(void* p) const { pk_free(p); }
};

std::string take(char* text) {
  std::unique_ptr<char, FreeDeleter> guard(text);
  return text ? std::string(text) : std::string();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kExitData, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Exit{kExitData, "cannot write '" + path + "'"};
}

PosePtr load(const std::string& path, long people = -1) {
  pk_pose* p = nullptr;
  if (ends_with(path, ".json")) {
    const auto text = read_text(path);
    check(pk_openpose_ingest(text.data(), text.size(), people, &p));
  } else {
    check(pk_pose_read_file(path.c_str(), &p));
  }
  return PosePtr(p);
}

void save(const pk_pose* pose, const std::string& path, int coord_decimals = -1,
          int conf_decimals = -1) {
  if (ends_with(path, ".json")) {
    char* json = nullptr;
    check(pk_openpose_export(pose, coord_decimals, conf_decimals, &json));
    write_text(path, take(json));
  } else {
    check(pk_pose_write_file(pose, path.c_str()));
  }
}

template <typename Fn>
PosePtr apply(Fn&& fn) {
  pk_pose* out = nullptr;
  check(fn(&out));
  return PosePtr(out);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

int parse_hand(const std::string& hand) {
  if (hand == "auto") return PK_HAND_AUTO;
  if (hand == "left") return PK_HAND_LEFT;
  if (hand == "right") return PK_HAND_RIGHT;
  usage_error("--hand must be auto, left or right");
}

int parse_scheme(const std::string& scheme) {
  if (scheme == "bio") return PK_SCHEME_BIO;
  if (scheme == "io") return PK_SCHEME_IO;
  usage_error("--scheme must be bio or io");
}

int parse_kind(const std::string& kind) {
  if (kind == "sign") return PK_KIND_SIGN;
  if (kind == "phrase") return PK_KIND_PHRASE;
  usage_error("--kind must be sign or phrase");
}

// Applies `fn` to every non-empty line of stdin and prints one output line each.
template <typename Fn>
void per_line(Fn&& fn) {
  std::string line;
  while (std::getline(std::cin, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      std::cout << '\n';
      continue;
    }
    char* out = nullptr;
    check(fn(line.c_str(), &out));
    std::cout << take(out) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"posekit: pose sequence toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pk_version());

  std::function<void()> run;

  // info
  std::string info_in;
  auto* info = app.add_subcommand("info", "Print header summary and frame count");
  info->add_option("input", info_in, ".pose or OpenPose .json file")->required();
  bool info_validate = false;
  info->add_flag("--validate", info_validate, "Also list invariant violations");
  info->callback([&] {
    run = [&] {
      const auto pose = load(info_in);
      char* text = nullptr;
      check(pk_pose_describe(pose.get(), &text));
      std::cout << take(text);
      if (info_validate) {
        char* report = nullptr;
        check(pk_pose_validate(pose.get(), &report));
        const auto r = take(report);
        std::cout << (r.empty() ? std::string("valid\n") : r);
      }
    };
  });

  // convert
  std::string conv_in, conv_out;
  long conv_people = -1;
  int conv_coord = -1, conv_conf = -1;
  auto* convert = app.add_subcommand("convert", "Convert between OpenPose JSON and .pose");
  convert->add_option("input", conv_in)->required();
  convert->add_option("output", conv_out)->required();
  convert->add_option("--people", conv_people, "People per frame when reading JSON");
  convert->add_option("--coordinate-decimals", conv_coord, "Fixed decimals for JSON coordinates");
  convert->add_option("--confidence-decimals", conv_conf, "Fixed decimals for JSON confidences");
  convert->callback([&] {
    run = [&] { save(load(conv_in, conv_people).get(), conv_out, conv_coord, conv_conf); };
  });

  // components
  std::string comp_in, comp_out;
  std::vector<std::string> comp_names;
  auto* components = app.add_subcommand("components", "Keep only the named components");
  components->add_option("input", comp_in)->required();
  components->add_option("output", comp_out)->required();
  components->add_option("-c,--component", comp_names, "Component to keep, in output order")
      ->required();
  components->callback([&] {
    run = [&] {
      const auto pose = load(comp_in);
      std::vector<const char*> names;
      for (const auto& n : comp_names) names.push_back(n.c_str());
      save(apply([&](pk_pose** out) {
             return pk_pose_select_components(pose.get(), names.data(), names.size(), out);
           }).get(),
           comp_out);
    };
  });

  // normalize
  std::string norm_in, norm_out, norm_shoulders, norm_plane;
  auto* normalize = app.add_subcommand("normalize", "Shoulder or plane normalization");
  normalize->add_option("input", norm_in)->required();
  normalize->add_option("output", norm_out)->required();
  auto* opt_sh = normalize->add_option("--shoulders", norm_shoulders, "LEFT,RIGHT point names");
  auto* opt_pl = normalize->add_option("--plane", norm_plane, "A,B,C point names");
  opt_sh->excludes(opt_pl);
  normalize->callback([&] {
    run = [&] {
      const auto pose = load(norm_in);
      PosePtr out;
      if (!norm_shoulders.empty()) {
        const auto p = split(norm_shoulders, ',');
        if (p.size() != 2) usage_error("--shoulders expects LEFT,RIGHT");
        out = apply([&](pk_pose** o) {
          return pk_pose_normalize_shoulders(pose.get(), p[0].c_str(), p[1].c_str(), o);
        });
      } else if (!norm_plane.empty()) {
        const auto p = split(norm_plane, ',');
        if (p.size() != 3) usage_error("--plane expects A,B,C");
        out = apply([&](pk_pose** o) {
          return pk_pose_normalize_plane(pose.get(), p[0].c_str(), p[1].c_str(), p[2].c_str(), o);
        });
      } else {
        usage_error("normalize needs --shoulders or --plane");
      }
      save(out.get(), norm_out);
    };
  });

  // augment
  std::string aug_in, aug_out, aug_translate;
  pk_affine aug_affine;
  pk_affine_default(&aug_affine);
  bool aug_reflect = false;
  std::optional<double> aug_noise, aug_dropout;
  std::optional<std::uint64_t> aug_seed;
  auto* augment = app.add_subcommand(
      "augment", "Affine transform, then frame dropout, then Gaussian noise");
  augment->add_option("input", aug_in)->required();
  augment->add_option("output", aug_out)->required();
  augment->add_option("--rotate", aug_affine.rotation_deg, "Rotation in degrees");
  augment->add_option("--scale", aug_affine.scale, "Uniform scale");
  augment->add_option("--shear", aug_affine.shear_x, "Shear along x");
  augment->add_option("--shear-y", aug_affine.shear_y, "Shear along y");
  augment->add_option("--translate", aug_translate, "X,Y offset");
  augment->add_flag("--reflect", aug_reflect, "Mirror x");
  augment->add_option("--noise", aug_noise, "Gaussian noise sigma");
  augment->add_option("--dropout", aug_dropout, "Frame drop probability");
  augment->add_option("--seed", aug_seed, "Seed; required with --noise or --dropout");
  augment->callback([&] {
    run = [&] {
      if ((aug_noise || aug_dropout) && !aug_seed) usage_error("--noise and --dropout need --seed");
      if (!aug_translate.empty()) {
        const auto p = split(aug_translate, ',');
        if (p.size() != 2) usage_error("--translate expects X,Y");
        try {
          aug_affine.translate_x = std::stod(p[0]);
          aug_affine.translate_y = std::stod(p[1]);
        } catch (const std::exception&) {
          usage_error("--translate expects numbers");
        }
      }
      aug_affine.reflect_x = aug_reflect ? 1 : 0;
      auto pose = load(aug_in);
      pose = apply([&](pk_pose** o) { return pk_pose_affine(pose.get(), &aug_affine, o); });
      if (aug_dropout) {
        pose = apply([&](pk_pose** o) { return pk_pose_dropout(pose.get(), *aug_dropout, *aug_seed, o); });
      }
      if (aug_noise) {
        // Separate stream so noise does not correlate with the dropout draws.
        pose = apply([&](pk_pose** o) { return pk_pose_noise(pose.get(), *aug_noise, *aug_seed + 1, o); });
      }
      save(pose.get(), aug_out);
    };
  });

  // fps
  std::string fps_in, fps_out;
  std::uint16_t fps_value = 0;
  auto* fps = app.add_subcommand("fps", "Resample to a new frame rate");
  fps->add_option("input", fps_in)->required();
  fps->add_option("output", fps_out)->required();
  fps->add_option("--fps", fps_value, "Target frame rate")->required();
  fps->callback([&] {
    run = [&] {
      const auto pose = load(fps_in);
      save(apply([&](pk_pose** o) { return pk_pose_interpolate_fps(pose.get(), fps_value, o); }).get(),
           fps_out);
    };
  });

  // smooth
  std::string sm_in, sm_out;
  std::size_t sm_window = 7, sm_order = 2;
  auto* smooth = app.add_subcommand("smooth", "Savitzky-Golay smoothing per coordinate");
  smooth->add_option("input", sm_in)->required();
  smooth->add_option("output", sm_out)->required();
  smooth->add_option("--window", sm_window, "Odd window length")->capture_default_str();
  smooth->add_option("--polyorder", sm_order, "Polynomial order")->capture_default_str();
  smooth->callback([&] {
    run = [&] {
      const auto pose = load(sm_in);
      save(apply([&](pk_pose** o) { return pk_pose_savgol(pose.get(), sm_window, sm_order, o); }).get(),
           sm_out);
    };
  });

  // flow
  std::string flow_in, flow_out;
  auto* flow = app.add_subcommand("flow", "Per-point flow magnitudes as CSV");
  flow->add_option("input", flow_in)->required();
  flow->add_option("-o,--output", flow_out, "CSV path (default: stdout)");
  flow->callback([&] {
    run = [&] {
      const auto pose = load(flow_in);
      char* csv = nullptr;
      check(pk_pose_flow_csv(pose.get(), &csv));
      write_text(flow_out, take(csv));
    };
  });

  // hand-normalize
  std::string hn_in, hn_out, hn_component, hn_hand = "auto";
  auto* hand_norm = app.add_subcommand("hand-normalize", "Canonicalize a 21-point 3-D hand component");
  hand_norm->add_option("input", hn_in)->required();
  hand_norm->add_option("output", hn_out)->required();
  hand_norm->add_option("-c,--component", hn_component, "Hand component name")->required();
  hand_norm->add_option("--hand", hn_hand, "auto, left or right")->capture_default_str();
  hand_norm->callback([&] {
    run = [&] {
      const int hand = parse_hand(hn_hand);
      const auto pose = load(hn_in);
      save(apply([&](pk_pose** o) {
             return pk_pose_hand_normalize(pose.get(), hn_component.c_str(), hand, o);
           }).get(),
           hn_out);
    };
  });

  // hand-metrics
  std::vector<std::string> hm_inputs;
  std::string hm_component, hm_hand = "auto";
  bool hm_mace = false, hm_cce = false;
  auto* hand_metrics = app.add_subcommand(
      "hand-metrics", "MACE or CCE over one hand-shape group (every frame of every file)");
  hand_metrics->add_option("inputs", hm_inputs, "Observation files")->required();
  hand_metrics->add_option("-c,--component", hm_component, "Hand component name")->required();
  hand_metrics->add_option("--hand", hm_hand, "auto, left or right")->capture_default_str();
  auto* f_mace = hand_metrics->add_flag("--mace", hm_mace, "Multi-angle consistency error");
  auto* f_cce = hand_metrics->add_flag("--cce", hm_cce, "Crop consistency error");
  f_mace->excludes(f_cce);
  hand_metrics->callback([&] {
    run = [&] {
      if (!hm_mace && !hm_cce) usage_error("hand-metrics needs --mace or --cce");
      const int hand = parse_hand(hm_hand);
      std::vector<PosePtr> poses;
      std::vector<const pk_pose*> raw;
      for (const auto& path : hm_inputs) {
        poses.push_back(load(path));
        raw.push_back(poses.back().get());
      }
      double value = 0.0;
      std::size_t dropped = 0;
      check(pk_hand_metric(raw.data(), raw.size(), hm_component.c_str(), hand,
                           hm_mace ? PK_METRIC_MACE : PK_METRIC_CCE, &value, &dropped));
      if (dropped) std::cerr << "warning: dropped " << dropped << " observation(s)\n";
      std::printf("%s %.9g\n", hm_mace ? "mace" : "cce", value);
    };
  });

  // segment-encode
  std::string se_in, se_out, se_scheme = "bio";
  std::size_t se_length = 0;
  auto* seg_encode = app.add_subcommand("segment-encode", "Segments to a BIO/IO tag line");
  seg_encode->add_option("input", se_in, "Segments file (- for stdin)")->required();
  seg_encode->add_option("--length", se_length, "Frame count")->required();
  seg_encode->add_option("--scheme", se_scheme, "bio or io")->capture_default_str();
  seg_encode->add_option("-o,--output", se_out, "Output path (default: stdout)");
  seg_encode->callback([&] {
    run = [&] {
      const int scheme = parse_scheme(se_scheme);
      const auto text = read_text(se_in);
      char* tags = nullptr;
      check(pk_segments_encode(text.c_str(), se_length, scheme, &tags));
      write_text(se_out, take(tags));
    };
  });

  // segment-decode
  std::string sd_in, sd_out, sd_scheme = "bio", sd_kind = "sign";
  double sd_tb = 50.0, sd_to = 50.0;
  bool sd_argmax = false, sd_tags = false;
  auto* seg_decode = app.add_subcommand(
      "segment-decode", "Probability CSV (or a tag line with --tags) to segments");
  seg_decode->add_option("input", sd_in, "Input file (- for stdin)")->required();
  seg_decode->add_option("--tb", sd_tb, "B threshold")->capture_default_str();
  seg_decode->add_option("--to", sd_to, "O threshold")->capture_default_str();
  seg_decode->add_flag("--argmax", sd_argmax, "Trigger on the largest class instead of thresholds");
  seg_decode->add_flag("--tags", sd_tags, "Input is a tag line");
  seg_decode->add_option("--scheme", sd_scheme, "Tag scheme with --tags: bio or io")
      ->capture_default_str();
  seg_decode->add_option("--kind", sd_kind, "sign or phrase")->capture_default_str();
  seg_decode->add_option("-o,--output", sd_out, "Output path (default: stdout)");
  seg_decode->callback([&] {
    run = [&] {
      const int kind = parse_kind(sd_kind);
      const auto text = read_text(sd_in);
      char* segs = nullptr;
      if (sd_tags) {
        std::size_t lenient = 0;
        check(pk_tags_decode(text.c_str(), parse_scheme(sd_scheme), kind, &segs, &lenient));
        if (lenient) std::cerr << "warning: " << lenient << " segment(s) opened by I without B\n";
      } else {
        check(pk_probs_decode(text.c_str(), sd_tb, sd_to,
                              sd_argmax ? PK_DECODE_ARGMAX : PK_DECODE_THRESHOLD, kind, &segs));
      }
      write_text(sd_out, take(segs));
    };
  });

  // segment-eval
  std::string ev_gold, ev_pred;
  std::size_t ev_length = 0;
  auto* seg_eval = app.add_subcommand("segment-eval", "Frame F1, segment IoU and percentage");
  seg_eval->add_option("gold", ev_gold, "Gold segments file")->required();
  seg_eval->add_option("pred", ev_pred, "Predicted segments file")->required();
  seg_eval->add_option("--length", ev_length, "Frame count (default: inferred)");
  seg_eval->callback([&] {
    run = [&] {
      const auto gold = read_text(ev_gold);
      const auto pred = read_text(ev_pred);
      pk_segment_scores s{};
      check(pk_segments_evaluate(gold.c_str(), pred.c_str(), ev_length, &s));
      std::printf("frame_f1 %.9g\nsegment_iou %.9g\nsegment_percentage %.9g\n", s.frame_f1,
                  s.segment_iou, s.segment_percentage);
    };
  });

  // stitch
  std::string st_out;
  std::vector<std::string> st_clips, st_anchors;
  pk_stitch_config st_cfg;
  pk_stitch_config_default(&st_cfg);
  auto* stitch = app.add_subcommand("stitch", "Join clips into one continuous sequence");
  stitch->add_option("output", st_out)->required();
  stitch->add_option("clips", st_clips, "Clips in order")->required();
  stitch->add_option("--padding", st_cfg.padding_seconds, "Gap between clips in seconds")
      ->capture_default_str();
  stitch->add_option("--window", st_cfg.search_window, "Cut search window in frames (0: auto)")
      ->capture_default_str();
  stitch->add_option("--trim", st_cfg.trim_flow_fraction, "Idle trim threshold as fraction of peak flow")
      ->capture_default_str();
  stitch->add_option("--savgol-window", st_cfg.savgol_window)->capture_default_str();
  stitch->add_option("--savgol-polyorder", st_cfg.savgol_polyorder)->capture_default_str();
  stitch->add_option("--anchor", st_anchors, "HAND_COMPONENT=BODY_WRIST alignment");
  stitch->callback([&] {
    run = [&] {
      std::vector<std::string> hands, wrists;
      for (const auto& a : st_anchors) {
        const auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == a.size()) {
          usage_error("--anchor expects HAND_COMPONENT=BODY_WRIST");
        }
        hands.push_back(a.substr(0, eq));
        wrists.push_back(a.substr(eq + 1));
      }
      std::vector<const char*> hp, wp;
      for (std::size_t i = 0; i < hands.size(); ++i) {
        hp.push_back(hands[i].c_str());
        wp.push_back(wrists[i].c_str());
      }
      st_cfg.anchor_hands = hp.data();
      st_cfg.anchor_wrists = wp.data();
      st_cfg.anchor_count = hp.size();
      std::vector<PosePtr> clips;
      std::vector<const pk_pose*> raw;
      for (const auto& path : st_clips) {
        clips.push_back(load(path));
        raw.push_back(clips.back().get());
      }
      save(apply([&](pk_pose** o) { return pk_stitch(raw.data(), raw.size(), &st_cfg, o); }).get(),
           st_out);
    };
  });

  // fsw
  auto* fsw = app.add_subcommand("fsw", "Formal SignWriting tokens, stdin to stdout, per line");
  fsw->require_subcommand(1);
  auto* fsw_tok = fsw->add_subcommand("tokenize", "FSW to tokens");
  auto* fsw_detok = fsw->add_subcommand("detokenize", "Tokens to FSW");
  fsw_tok->callback([&] { run = [] { per_line(pk_fsw_tokenize); }; });
  fsw_detok->callback([&] { run = [] { per_line(pk_fsw_detokenize); }; });

  // bench
  std::vector<std::size_t> bench_frames{1, 10, 100, 1000};
  std::size_t bench_iters = 10;
  std::uint64_t bench_seed = 0;
  std::string bench_dir = "bench_data", bench_csv;
  auto* bench = app.add_subcommand("bench", "JSON versus .pose read benchmark");
  bench->add_option("--frames", bench_frames, "Frame counts")->capture_default_str();
  bench->add_option("--iters", bench_iters, "Timed iterations per case")->capture_default_str();
  bench->add_option("--seed", bench_seed, "Synthetic data seed")->capture_default_str();
  bench->add_option("--out", bench_dir, "Directory for generated files")->capture_default_str();
  bench->add_option("--csv", bench_csv, "Also write the report as CSV");
  bench->callback([&] {
    run = [&] {
      std::vector<pk_bench_case> cases;
      for (std::size_t frames : bench_frames) {
        char* json = nullptr;
        char* pose = nullptr;
        check(pk_bench_make_pair(frames, bench_seed, bench_dir.c_str(), &json, &pose));
        const auto json_path = take(json);
        const auto pose_path = take(pose);
        pk_bench_case c{};
        check(pk_bench_run(json_path.c_str(), pose_path.c_str(), bench_iters, &c));
        cases.push_back(c);
      }
      char* text = nullptr;
      check(pk_bench_format(cases.data(), cases.size(), 0, &text));
      std::cout << take(text);
      if (!bench_csv.empty()) {
        char* csv = nullptr;
        check(pk_bench_format(cases.data(), cases.size(), 1, &csv));
        write_text(bench_csv, take(csv));
      }
    };
  });

  // render
  std::string rd_in, rd_dir;
  pk_render_config rd_cfg;
  pk_render_config_default(&rd_cfg);
  auto* render = app.add_subcommand("render", "Write frame_%05d.ppm images");
  render->add_option("input", rd_in)->required();
  render->add_option("output_dir", rd_dir)->required();
  render->add_option("--width", rd_cfg.width, "Canvas width (default: header or 512)");
  render->add_option("--height", rd_cfg.height, "Canvas height (default: header or 512)");
  render->add_option("--radius", rd_cfg.point_radius, "Point radius in pixels")->capture_default_str();
  render->add_option("--confidence-floor", rd_cfg.confidence_floor, "Skip points at or below")
      ->capture_default_str();
  render->callback([&] {
    run = [&] {
      const auto pose = load(rd_in);
      std::size_t count = 0;
      check(pk_render_sequence(pose.get(), rd_dir.c_str(), &rd_cfg, &count));
      std::cout << "wrote " << count << " frame(s) to " << rd_dir << "\n";
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run) run();
  } catch (const Exit& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  }
  return 0;
}
