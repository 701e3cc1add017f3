#include <benchmark/benchmark.h>

#include "vidpipe/dedup.hpp"
#include "vidpipe/features.hpp"
#include "vidpipe/gates.hpp"
#include "vidpipe/motion.hpp"
#include "vidpipe/scene.hpp"
#include "vidpipe/synth.hpp"

using namespace vidpipe;

namespace {

std::vector<Frame> bench_frames(std::int64_t side, std::int64_t count) {
  MovingSquareParams p;
  p.width = side;
  p.height = side;
  p.square = side / 4;
  p.dx = side / 8;
  p.frames = count;
  return synth_moving_square(p);
}

void BM_MotionMask(benchmark::State& state) {
  auto frames = bench_frames(state.range(0), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(motion_mask(frames[0], frames[1], 25));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_MotionMask)->Arg(64)->Arg(256)->Arg(512);

void BM_RefineMask(benchmark::State& state) {
  auto frames = bench_frames(state.range(0), 2);
  BinaryMask mask = motion_mask(frames[0], frames[1], 25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(refine_mask(mask));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_RefineMask)->Arg(64)->Arg(256)->Arg(512);

void BM_MotionProfile(benchmark::State& state) {
  auto frames = bench_frames(64, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(motion_profile("b", frames, 25));
  }
  state.SetItemsProcessed(state.iterations() * (state.range(0) - 1));
}
BENCHMARK(BM_MotionProfile)->Arg(30)->Arg(120);

void BM_ContentDiff(benchmark::State& state) {
  auto frames = bench_frames(state.range(0), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(content_diff(frames[0], frames[1]));
  }
}
BENCHMARK(BM_ContentDiff)->Arg(64)->Arg(512);

void BM_ReferenceExtract(benchmark::State& state) {
  auto frames = bench_frames(state.range(0), 30);
  ReferenceFeatureExtractor extractor;
  for (auto _ : state) {
    benchmark::DoNotOptimize(extractor.extract(frames));
  }
}
BENCHMARK(BM_ReferenceExtract)->Arg(64)->Arg(256);

void BM_DedupGroup(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Clip> clips;
  std::vector<FeatureVector> features;
  for (int i = 0; i < n; ++i) {
    Clip c;
    c.asset_id = "b";
    c.start_frame = 100 * i;
    c.end_frame = 100 * i + 50 + i % 37;
    c.clip_id = "b:" + std::to_string(c.start_frame) + "-" +
                std::to_string(c.end_frame);
    clips.push_back(std::move(c));
    FeatureVector v;
    for (int d = 0; d < 64; ++d)
      v.values.push_back(((i * 131 + d * 17) % 255) / 255.0 + 0.01);
    features.push_back(std::move(v));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(dedup_group(clips, features, 0.9));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_DedupGroup)->Arg(16)->Arg(128)->Arg(512);

void BM_AestheticScore(benchmark::State& state) {
  auto frames = bench_frames(state.range(0), 4);
  ReferenceAestheticScorer scorer;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scorer.score(frames));
  }
}
BENCHMARK(BM_AestheticScore)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
