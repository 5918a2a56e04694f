#include "epr/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "epr/rng.hpp"
#include "kernels/kernel_impl.hpp"

namespace epr {

namespace {

constexpr std::size_t kChunk = 4096;
constexpr std::uint64_t kAccidentalStream = (std::uint64_t{1} << 63) | 0xACC;

std::uint64_t block_trials(const McConfig& cfg, unsigned block) {
  return cfg.trials / cfg.streams + (block < cfg.trials % cfg.streams ? 1 : 0);
}

// Runs fn(block) for every block, one thread per block beyond the first.
template <class Fn>
void for_each_block(unsigned streams, Fn&& fn) {
  if (streams == 1) {
    fn(0u);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(streams - 1);
  for (unsigned b = 1; b < streams; ++b) workers.emplace_back([&fn, b] { fn(b); });
  fn(0u);
  for (auto& w : workers) w.join();
}

Kernels kernels_for(const McConfig& cfg) {
  return cfg.isa ? Kernels::for_isa(*cfg.isa) : Kernels::best();
}

AxisSample draw_axis(RandomStream& rng, const DisentangledEnsemble& ens, bool sfg_type1) {
  AxisSample axis = sample_axis(rng, ens);
  return sfg_type1 ? sfg_axis_transform(SfgType::TypeI, axis) : axis;
}

CoincidenceCounts run_entangled_double(const SourceModel& model, const PolarizerSetting& a,
                                       const PolarizerSetting& b, const McConfig& cfg) {
  const ChannelProbabilities p = aspect_probabilities(model, a, b);
  const double c0 = p.pp;
  const double c1 = c0 + p.pm;
  const double c2 = c1 + p.mp;

  std::vector<ChannelTally> tallies(cfg.streams, ChannelTally{});
  for_each_block(cfg.streams, [&](unsigned block) {
    RandomStream rng = RandomStream::for_block(cfg.seed, block);
    ChannelTally& t = tallies[block];
    const std::uint64_t n = block_trials(cfg, block);
    for (std::uint64_t i = 0; i < n; ++i) {
      const double u = rng.uniform();
      ++t[u < c0 ? 0 : u < c1 ? 1 : u < c2 ? 2 : 3];
    }
  });

  CoincidenceCounts out;
  out.n_trials = cfg.trials;
  for (const auto& t : tallies) {
    out.n_pp += t[0];
    out.n_pm += t[1];
    out.n_mp += t[2];
    out.n_mm += t[3];
  }
  return out;
}

CoincidenceCounts run_disentangled_double(const DisentangledEnsemble& ens,
                                          const PolarizerSetting& a, const PolarizerSetting& b,
                                          const McConfig& cfg) {
  const Kernels kernels = kernels_for(cfg);
  const AnalyzerPair analyzers{std::cos(2.0 * a.angle()), std::sin(2.0 * a.angle()),
                               std::cos(2.0 * b.angle()), std::sin(2.0 * b.angle()),
                               ens.anticorrelated ? -1.0 : 1.0};

  std::vector<ChannelTally> tallies(cfg.streams, ChannelTally{});
  for_each_block(cfg.streams, [&](unsigned block) {
    RandomStream rng = RandomStream::for_block(cfg.seed, block);
    std::vector<double> c2(kChunk), s2(kChunk), phi2(kChunk), phi3(kChunk), ua(kChunk), ub(kChunk);
    std::vector<std::uint8_t> accepted(kChunk);
    std::uint64_t remaining = block_trials(cfg, block);
    while (remaining > 0) {
      const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, kChunk));
      for (std::size_t i = 0; i < n; ++i) {
        const AxisSample axis = draw_axis(rng, ens, cfg.sfg_type1);
        c2[i] = std::cos(2.0 * axis.theta);
        s2[i] = std::sin(2.0 * axis.theta);
        phi2[i] = axis.phi2;
        phi3[i] = axis.phi3;
        ua[i] = rng.uniform();
        ub[i] = rng.uniform();
      }
      const std::span<std::uint8_t> acc(accepted.data(), n);
      kernels.phase_accept({phi2.data(), n}, {phi3.data(), n}, cfg.phase_window, acc);
      kernels.malus_tally(MalusBatch{{c2.data(), n}, {s2.data(), n}, {ua.data(), n},
                                     {ub.data(), n}, {accepted.data(), n}},
                          analyzers, tallies[block]);
      remaining -= n;
    }
  });

  CoincidenceCounts out;
  out.n_trials = cfg.trials;
  for (const auto& t : tallies) {
    out.n_pp += t[0];
    out.n_pm += t[1];
    out.n_mp += t[2];
    out.n_mm += t[3];
  }
  return out;
}

TripleSettings for_closed_form(TripleSettings settings) {
  if (auto* k = std::get_if<KimSettings>(&settings)) {
    k->detector = kim_closed_form_branch(k->detector);
  }
  return settings;
}

ExperimentSettings widen(const TripleSettings& s) {
  if (const auto* g = std::get_if<GisinSettings>(&s)) return *g;
  if (const auto* z = std::get_if<ZeilingerSettings>(&s)) return *z;
  return std::get<KimSettings>(s);
}

TripleEstimate run_entangled_triple(const TripleSettings& settings, const SourceModel& model,
                                    const McConfig& cfg) {
  double p = entangled_first_principles(model, kind_of(settings), widen(for_closed_form(settings)));
  if (p < tol::kAlgebraic) p = 0.0;

  std::vector<std::uint64_t> hits(cfg.streams, 0);
  for_each_block(cfg.streams, [&](unsigned block) {
    RandomStream rng = RandomStream::for_block(cfg.seed, block);
    const std::uint64_t n = block_trials(cfg, block);
    std::uint64_t h = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (rng.uniform() < p) ++h;
    }
    hits[block] = h;
  });

  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  TripleEstimate est;
  est.n_trials = cfg.trials;
  est.n_accepted = cfg.trials;
  est.value = static_cast<double>(total) / static_cast<double>(cfg.trials);
  est.std_err = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(cfg.trials));
  return est;
}

ProductContraction contract(const TripleMeasurement& m) {
  // M_jk = sum_i conj(Phi_ijk) * alice_i
  ProductContraction c;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      Complex acc = 0.0;
      for (int i = 0; i < 2; ++i) {
        acc += std::conj(m.measured[4 * i + 2 * j + k]) * m.alice[i];
      }
      c.m[2 * j + k] = acc;
    }
  }
  return c;
}

struct BlockMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t n = 0;
};

TripleEstimate run_disentangled_triple(const TripleSettings& settings,
                                       const DisentangledEnsemble& ens, const McConfig& cfg) {
  const Kernels kernels = kernels_for(cfg);
  const ProductContraction contraction = contract(triple_measurement(for_closed_form(settings)));

  std::vector<BlockMoments> moments(cfg.streams);
  for_each_block(cfg.streams, [&](unsigned block) {
    RandomStream rng = RandomStream::for_block(cfg.seed, block);
    std::vector<double> buf(8 * kChunk), phi2(kChunk), phi3(kChunk), prob(kChunk);
    std::vector<std::uint8_t> accepted(kChunk);
    double* col[8];
    for (int k = 0; k < 8; ++k) col[k] = buf.data() + k * kChunk;

    BlockMoments& mom = moments[block];
    std::uint64_t remaining = block_trials(cfg, block);
    while (remaining > 0) {
      const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, kChunk));
      for (std::size_t i = 0; i < n; ++i) {
        const AxisSample axis = draw_axis(rng, ens, cfg.sfg_type1);
        const double c = std::cos(axis.theta);
        const double s = std::sin(axis.theta);
        const double c2 = std::cos(axis.phi2), s2 = std::sin(axis.phi2);
        const double c3 = std::cos(axis.phi3), s3 = std::sin(axis.phi3);
        col[0][i] = c;
        col[1][i] = 0.0;
        col[2][i] = c2 * s;
        col[3][i] = s2 * s;
        if (ens.anticorrelated) {
          col[4][i] = s;
          col[5][i] = 0.0;
          col[6][i] = -(c3 * c);
          col[7][i] = -(s3 * c);
        } else {
          col[4][i] = c;
          col[5][i] = 0.0;
          col[6][i] = c3 * s;
          col[7][i] = s3 * s;
        }
        phi2[i] = axis.phi2;
        phi3[i] = axis.phi3;
      }
      kernels.phase_accept({phi2.data(), n}, {phi3.data(), n}, cfg.phase_window,
                           {accepted.data(), n});
      const ProductBatch batch{{col[0], n}, {col[1], n}, {col[2], n}, {col[3], n},
                               {col[4], n}, {col[5], n}, {col[6], n}, {col[7], n}};
      kernels.product_born(batch, contraction, {prob.data(), n});
      for (std::size_t i = 0; i < n; ++i) {
        if (!accepted[i]) continue;
        mom.sum += prob[i];
        mom.sum_sq += prob[i] * prob[i];
        ++mom.n;
      }
      remaining -= n;
    }
  });

  BlockMoments total;
  for (const auto& m : moments) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
    total.n += m.n;
  }
  TripleEstimate est;
  est.n_trials = cfg.trials;
  est.n_accepted = total.n;
  if (total.n == 0) return est;
  const double n = static_cast<double>(total.n);
  est.value = total.sum / n;
  if (total.n > 1) {
    const double var = std::max(0.0, (total.sum_sq - n * est.value * est.value) / (n - 1.0));
    est.std_err = std::sqrt(var / n);
  }
  return est;
}

}  // namespace

void McConfig::validate() const {
  if (trials == 0) throw ValidationError("McConfig: trials must be positive");
  if (streams == 0) throw ValidationError("McConfig: streams must be positive");
  if (streams > 4096) throw ValidationError("McConfig: at most 4096 streams");
  if (!(phase_window >= 0.0)) throw ValidationError("McConfig: phase window must be >= 0");
  if (!(accidental_rate >= 0.0 && accidental_rate < 1.0)) {
    throw ValidationError("McConfig: accidental rate must lie in [0, 1)");
  }
}

double wrap_phase(double delta) {
  const double turns = std::nearbyint(delta * kernels::detail::kInvTwoPi);
  double r = delta - kernels::detail::kTwoPi * turns;
  if (r <= -kPi) r += kernels::detail::kTwoPi;
  return r;
}

bool phase_accept(double phi2, double phi3, double window) {
  if (!(window >= 0.0)) throw ValidationError("phase_accept: window must be >= 0");
  std::uint8_t out = 0;
  kernels::detail::phase_accept_scalar(&phi2, &phi3, 1, window, &out);
  return out != 0;
}

CoincidenceCounts run_double_coincidence(const SourceModel& model, const PolarizerSetting& a,
                                         const PolarizerSetting& b, const McConfig& cfg) {
  cfg.validate();
  CoincidenceCounts counts;
  if (const auto* ens = std::get_if<DisentangledEnsemble>(&model)) {
    counts = run_disentangled_double(*ens, a, b, cfg);
  } else {
    counts = run_entangled_double(model, a, b, cfg);
  }
  if (cfg.accidental_rate > 0.0) {
    RandomStream rng = RandomStream::for_block(cfg.seed, kAccidentalStream);
    counts = inject_accidentals(counts, cfg.accidental_rate, rng);
  }
  return counts;
}

TripleEstimate run_triple_coincidence(const TripleSettings& settings, const SourceModel& model,
                                      const McConfig& cfg) {
  cfg.validate();
  if (cfg.accidental_rate > 0.0) {
    throw ValidationError("accidental injection applies to double-coincidence runs only");
  }
  TripleEstimate est;
  if (const auto* ens = std::get_if<DisentangledEnsemble>(&model)) {
    est = run_disentangled_triple(settings, *ens, cfg);
  } else {
    est = run_entangled_triple(settings, model, cfg);
  }
  est.analytic = triple_expectation(model, settings);
  return est;
}

CoincidenceCounts inject_accidentals(const CoincidenceCounts& counts, double rate, RandomStream& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw ValidationError("inject_accidentals: rate must lie in [0, 1)");
  }
  CoincidenceCounts out = counts;
  if (rate == 0.0) return out;

  std::uint64_t extra = 0;
  for (std::uint64_t i = 0; i < counts.n_trials; ++i) {
    if (rng.uniform() < rate) ++extra;
  }

  std::uint64_t* channels[4] = {&out.n_pp, &out.n_pm, &out.n_mp, &out.n_mm};
  for (auto* ch : channels) *ch += extra / 4;
  // Partial Fisher-Yates: the remainder lands on distinct random channels.
  int order[4] = {0, 1, 2, 3};
  const std::uint64_t rem = extra % 4;
  for (std::uint64_t k = 0; k < rem; ++k) {
    const auto j = static_cast<int>(k + rng.below(4 - k));
    std::swap(order[k], order[j]);
    ++*channels[order[k]];
  }
  out.n_accidental += extra;
  return out;
}

double estimate_detection_rate(double window, std::uint64_t trials, std::uint64_t seed,
                               unsigned streams) {
  McConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.streams = streams;
  cfg.phase_window = window;
  cfg.validate();
  const Kernels kernels = Kernels::best();

  std::vector<std::uint64_t> passed(streams, 0);
  for_each_block(streams, [&](unsigned block) {
    RandomStream rng = RandomStream::for_block(seed, block);
    std::vector<double> phi2(kChunk), phi3(kChunk);
    std::vector<std::uint8_t> accepted(kChunk);
    std::uint64_t remaining = block_trials(cfg, block);
    std::uint64_t count = 0;
    while (remaining > 0) {
      const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, kChunk));
      for (std::size_t i = 0; i < n; ++i) {
        phi2[i] = kTwoPi * rng.uniform();
        phi3[i] = kTwoPi * rng.uniform();
      }
      kernels.phase_accept({phi2.data(), n}, {phi3.data(), n}, window, {accepted.data(), n});
      for (std::size_t i = 0; i < n; ++i) count += accepted[i];
      remaining -= n;
    }
    passed[block] = count;
  });

  std::uint64_t total = 0;
  for (auto p : passed) total += p;
  return static_cast<double>(total) / static_cast<double>(trials);
}

}  // namespace epr
