#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "imageio.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace iris {

namespace fs = std::filesystem;

namespace {

constexpr double kMinTemp = 0.0;
constexpr double kMaxTemp = 200.0;

void check_temp(double t, const char* what) {
  if (!(t >= kMinTemp && t <= kMaxTemp)) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " outside [0, 200] C");
  }
}

}  // namespace

PixelRect bed_region(std::size_t width, std::size_t height) {
  return {width / 8, height / 10, width - width / 8, height - height / 10};
}

bool covers(const ObjectSpec& obj, std::size_t x, std::size_t y) {
  const double dx = (static_cast<double>(x) + 0.5 - obj.cx) / (obj.width / 2.0);
  const double dy = (static_cast<double>(y) + 0.5 - obj.cy) / (obj.height / 2.0);
  if (obj.shape == ObjectShape::Rectangle) return std::abs(dx) <= 1.0 && std::abs(dy) <= 1.0;
  return dx * dx + dy * dy <= 1.0;
}

ThermalImage generate_scene(const SceneSpec& spec) {
  if (spec.width < 1 || spec.height < 1) throw Error(ErrorKind::InvalidArgument, "empty scene");
  check_temp(spec.bed_temp_c, "bed_temp_c");
  check_temp(spec.ambient_temp_c, "ambient_temp_c");
  check_temp(spec.object_temp_c, "object_temp_c");
  if (!(spec.noise_sigma >= 0.0)) throw Error(ErrorKind::InvalidArgument, "noise_sigma < 0");

  const PixelRect bed = bed_region(spec.width, spec.height);
  if (spec.object) {
    const ObjectSpec& o = *spec.object;
    if (!(o.width > 0.0 && o.height > 0.0) || o.cx - o.width / 2 < bed.x0 ||
        o.cx + o.width / 2 > bed.x1 || o.cy - o.height / 2 < bed.y0 ||
        o.cy + o.height / 2 > bed.y1) {
      throw Error(ErrorKind::InvalidArgument, "object outside bed");
    }
  }

  SplitMix64 rng(spec.seed);
  std::vector<std::uint16_t> px(spec.width * spec.height);
  for (std::size_t y = 0; y < spec.height; ++y) {
    for (std::size_t x = 0; x < spec.width; ++x) {
      const double noise = spec.noise_sigma > 0.0 ? spec.noise_sigma * rng.gaussian() : 0.0;
      double temp = spec.ambient_temp_c;
      if (x >= bed.x0 && x < bed.x1 && y >= bed.y0 && y < bed.y1) {
        temp = spec.object && covers(*spec.object, x, y) ? spec.object_temp_c : spec.bed_temp_c;
      }
      const double counts = std::floor(temp * 100.0 + noise + 0.5);
      px[y * spec.width + x] = static_cast<std::uint16_t>(std::clamp(counts, 0.0, 65535.0));
    }
  }
  return ThermalImage(spec.width, spec.height, std::move(px));
}

DatasetManifest generate_dataset(const fs::path& out_dir, std::size_t n_per_cell, std::uint64_t seed,
                                 const SynthOptions& options) {
  if (n_per_cell < 1) throw Error(ErrorKind::InvalidArgument, "n_per_cell must be >= 1");
  std::error_code ec;
  fs::create_directories(out_dir / "images", ec);
  if (ec) {
    throw Error(ErrorKind::Io, "cannot create " + (out_dir / "images").string() + ": " + ec.message());
  }

  DatasetManifest manifest;
  manifest.root_dir = out_dir;
  std::vector<SceneSpec> specs;
  for (Condition cond : kAllConditions) {
    for (ClassLabel label : kAllLabels) {
      for (std::size_t k = 0; k < n_per_cell; ++k) {
        const std::uint64_t index = specs.size();
        SplitMix64 rng(mix_seed(seed, index));
        SceneSpec s;
        s.width = options.width;
        s.height = options.height;
        s.noise_sigma = options.noise_sigma;
        s.seed = rng.next();
        s.ambient_temp_c = rng.uniform(22.0, 26.0);
        if (cond == Condition::Hot) {
          s.bed_temp_c = rng.uniform(84.0, 86.0);
          s.object_temp_c = rng.uniform(55.0, 65.0);
        } else {
          s.bed_temp_c = rng.uniform(33.5, 34.5);
          s.object_temp_c = rng.uniform(26.0, 29.0);
        }
        if (label == ClassLabel::Present) {
          // Sized relative to the frame and kept near the centre so the
          // default zoom crop still sees it.
          const double short_side = static_cast<double>(std::min(s.width, s.height));
          ObjectSpec o;
          o.shape = rng.uniform01() < 0.5 ? ObjectShape::Rectangle : ObjectShape::Ellipse;
          o.width = short_side * rng.uniform(0.08, 0.2);
          o.height = short_side * rng.uniform(0.08, 0.2);
          o.cx = s.width / 2.0 + short_side * rng.uniform(-0.12, 0.12);
          o.cy = s.height / 2.0 + short_side * rng.uniform(-0.12, 0.12);
          s.object = o;
        }
        char name[64];
        std::snprintf(name, sizeof name, "%s_%s_%03zu", std::string(to_string(cond)).c_str(),
                      std::string(to_string(label)).c_str(), k);
        manifest.records.push_back({name, "images/" + std::string(name) + ".pgm", label, cond});
        specs.push_back(s);
      }
    }
  }

  parallel_for(specs.size(), options.jobs, [&](std::size_t i) {
    write_pgm16(manifest.resolve(manifest.records[i]), generate_scene(specs[i]));
  });
  write_manifest(out_dir / "manifest.jsonl", manifest);
  return manifest;
}

}  // namespace iris
