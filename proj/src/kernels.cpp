#include "pwmel/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pwmel {

namespace {

template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<double> melnikov_direct_grid(const PerturbationSpec& spec, const std::vector<double>& hs, Execution exec,
                                         const QuadratureOptions& opts) {
  std::vector<double> out(hs.size());
  for_each_index(hs.size(), exec, [&](std::size_t i) { out[i] = melnikov_direct(spec, hs[i], opts); });
  return out;
}

std::vector<double> melnikov_canonical_grid(const UForm& uf, const std::vector<double>& hs, Execution exec) {
  std::vector<double> out(hs.size());
  for_each_index(hs.size(), exec, [&](std::size_t i) { out[i] = melnikov_canonical(uf, hs[i]); });
  return out;
}

std::vector<DisplacementSample> displacement_grid(const PerturbationSpec& spec, const SimConfig& cfg,
                                                  const std::vector<double>& hs, Execution exec) {
  std::vector<DisplacementSample> out(hs.size());
  for_each_index(hs.size(), exec, [&](std::size_t i) {
    out[i].h = hs[i];
    try {
      out[i].d = return_map(spec, cfg, hs[i]).d;
      out[i].ok = true;
    } catch (const IntegrationFailure& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

PerturbationSpec random_spec(int n, Mode mode, std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index + 0x5bd1e995ULL * static_cast<std::uint64_t>(n + 1))));
  std::uniform_real_distribution<double> coefficient(-1.0, 1.0);
  PerturbationSpec spec(n, mode);
  for (Zone z : spec.zones()) {
    for (int d = 0; d <= n; ++d) {
      for (int i = 0; i <= d; ++i) {
        spec.set_a(z, i, d - i, coefficient(rng));
        spec.set_b(z, i, d - i, coefficient(rng));
      }
    }
  }
  return spec;
}

SweepSummary bound_sweep(int n, Mode mode, int specs, std::uint64_t seed, Execution exec, const ZeroScanOptions& scan) {
  SweepSummary s;
  s.n = n;
  s.mode = mode;
  s.bound = theoretical_bound(n, mode);
  s.entries.resize(specs);
  for_each_index(s.entries.size(), exec, [&](std::size_t i) {
    try {
      s.entries[i].count = count_zeros(u_form(random_spec(n, mode, seed, i)), scan).count;
    } catch (const ResolutionFailure& e) {
      s.entries[i].resolution_failure = true;
      s.entries[i].message = e.what();
    }
  });
  for (const auto& e : s.entries) {
    if (e.resolution_failure) {
      ++s.resolution_failures;
      continue;
    }
    s.max_count = std::max(s.max_count, e.count);
    if (e.count > s.bound) ++s.violations;
  }
  return s;
}

AgreementSummary dual_path_sweep(int n, Mode mode, int specs, const std::vector<double>& hs, std::uint64_t seed,
                                 Execution exec, const QuadratureOptions& opts) {
  std::vector<double> worst(specs, 0.0);
  std::vector<std::string> violation(specs);
  for_each_index(static_cast<std::size_t>(specs), exec, [&](std::size_t i) {
    const PerturbationSpec spec = random_spec(n, mode, seed, i);
    const CanonicalForm cf = canonical_form(spec);
    violation[i] = degree_violation(cf);
    const UForm uf = u_form(cf);
    for (double h : hs) {
      const double direct = melnikov_direct(spec, h, opts);
      const double canonical = melnikov_canonical(uf, h);
      const double scale = std::max(std::fabs(direct), static_cast<double>(uf.magnitude(u_of_h(h))));
      if (scale > 0.0) worst[i] = std::max(worst[i], std::fabs(direct - canonical) / scale);
    }
  });
  AgreementSummary out;
  out.evaluations = specs * static_cast<int>(hs.size());
  for (int i = 0; i < specs; ++i) {
    out.worst_relative = std::max(out.worst_relative, worst[i]);
    if (!violation[i].empty()) {
      if (out.degree_violations++ == 0) out.first_violation = violation[i];
    }
  }
  return out;
}

}  // namespace pwmel
