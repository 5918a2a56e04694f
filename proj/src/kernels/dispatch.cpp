#include <algorithm>
#include <string>

#include "epr/kernels.hpp"
#include "epr/qcore.hpp"
#include "kernel_impl.hpp"

namespace epr {

namespace kd = kernels::detail;

namespace {

constexpr kd::KernelTable kScalarTable{static_cast<int>(Isa::Scalar), kd::phase_accept_scalar,
                                       kd::malus_tally_scalar, kd::product_born_scalar};
#if defined(EPR_HAVE_AVX2)
constexpr kd::KernelTable kAvx2Table{static_cast<int>(Isa::Avx2), kd::phase_accept_avx2,
                                     kd::malus_tally_avx2, kd::product_born_avx2};
#endif
#if defined(EPR_HAVE_NEON)
constexpr kd::KernelTable kNeonTable{static_cast<int>(Isa::Neon), kd::phase_accept_neon,
                                     kd::malus_tally_neon, kd::product_born_neon};
#endif

const kd::KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return &kScalarTable;
    case Isa::Avx2:
#if defined(EPR_HAVE_AVX2)
      return &kAvx2Table;
#else
      return nullptr;
#endif
    case Isa::Neon:
#if defined(EPR_HAVE_NEON)
      return &kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

template <class T>
void require_same_size(std::span<const T> s, std::size_t n, const char* what) {
  if (s.size() != n) {
    throw ValidationError(std::string("kernel batch: ") + what + " has mismatched length");
  }
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(EPR_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(EPR_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  static const Isa best = [] {
    if (isa_supported(Isa::Avx2)) return Isa::Avx2;
    if (isa_supported(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
  }();
  return best;
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (isa_supported(isa)) out.push_back(isa);
  }
  return out;
}

Kernels Kernels::best() { return Kernels(table_for(best_isa())); }

Kernels Kernels::for_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw ValidationError("kernel variant '" + std::string(to_string(isa)) +
                          "' is not available on this host");
  }
  return Kernels(table_for(isa));
}

Isa Kernels::isa() const { return static_cast<Isa>(table_->isa); }

void Kernels::phase_accept(std::span<const double> phi2, std::span<const double> phi3,
                           double window, std::span<std::uint8_t> accept) const {
  const std::size_t n = phi2.size();
  require_same_size(phi3, n, "phi3");
  require_same_size(std::span<const std::uint8_t>(accept), n, "accept");
  table_->phase_accept(phi2.data(), phi3.data(), n, window, accept.data());
}

void Kernels::malus_tally(const MalusBatch& b, const AnalyzerPair& an, ChannelTally& tally) const {
  const std::size_t n = b.cos2theta.size();
  require_same_size(b.sin2theta, n, "sin2theta");
  require_same_size(b.u_first, n, "u_first");
  require_same_size(b.u_second, n, "u_second");
  require_same_size(b.accepted, n, "accepted");
  const kd::MalusArgs args{b.cos2theta.data(), b.sin2theta.data(), b.u_first.data(),
                           b.u_second.data(),  b.accepted.data(),  n,
                           an.cos2a,           an.sin2a,           an.cos2b,
                           an.sin2b,           an.partner_sign};
  table_->malus_tally(args, tally.data());
}

void Kernels::product_born(const ProductBatch& b, const ProductContraction& c,
                           std::span<double> out) const {
  const std::size_t n = out.size();
  const std::span<const double> inputs[8] = {b.s2_0_re, b.s2_0_im, b.s2_1_re, b.s2_1_im,
                                             b.s3_0_re, b.s3_0_im, b.s3_1_re, b.s3_1_im};
  kd::ProductArgs args{};
  for (int k = 0; k < 8; ++k) {
    require_same_size(inputs[k], n, "product amplitude");
    args.in[k] = inputs[k].data();
  }
  for (int k = 0; k < 4; ++k) {
    args.m[2 * k] = c.m[k].real();
    args.m[2 * k + 1] = c.m[k].imag();
  }
  args.n = n;
  args.out = out.data();
  table_->product_born(args);
}

}  // namespace epr
