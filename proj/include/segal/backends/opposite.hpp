#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace segal {

/// Formal opposite of a backend: same morphism values, read backwards. Admissible
/// monos and epis, kernels and cokernels trade places.
template <class B>
class Opposite {
public:
  using Mor = typename B::Mor;
  using Base = B;
  static constexpr bool krull_schmidt = requires { requires B::krull_schmidt; };

  explicit Opposite(B base = B()) : b_(std::move(base)) {}

  const B& base() const { return b_; }
  std::string name() const { return "op(" + b_.name() + ")"; }

  int src(const Mor& f) const { return b_.dst(f); }
  int dst(const Mor& f) const { return b_.src(f); }
  Mor identity(int a) const { return b_.identity(a); }
  Mor zero(int a, int b) const { return b_.zero(b, a); }
  Mor compose(const Mor& g, const Mor& f) const { return b_.compose(f, g); }

  bool is_zero(const Mor& f) const { return b_.is_zero(f); }
  bool is_adm_mono(const Mor& f) const { return b_.is_adm_epi(f); }
  bool is_adm_epi(const Mor& f) const { return b_.is_adm_mono(f); }
  bool is_iso(const Mor& f) const { return b_.is_iso(f); }
  Mor inverse(const Mor& f) const { return b_.inverse(f); }

  std::optional<Mor> kernel(const Mor& f) const { return b_.cokernel(f); }
  std::optional<Mor> cokernel(const Mor& f) const { return b_.kernel(f); }

  std::optional<std::pair<Mor, Mor>> factor_admissible(const Mor& f) const {
    auto em = b_.factor_admissible(f);
    if (!em) return std::nullopt;
    return std::make_pair(em->second, em->first);
  }

  std::optional<Mor> lift_mono(const Mor& m, const Mor& g) const { return b_.descend_epi(m, g); }
  std::optional<Mor> descend_epi(const Mor& e, const Mor& g) const { return b_.lift_mono(e, g); }

  std::vector<Mor> homs(int a, int b) const { return b_.homs(b, a); }
  std::vector<Mor> automorphisms(int a) const { return b_.automorphisms(a); }

  nlohmann::json to_json(const Mor& f) const {
    auto j = b_.to_json(f);
    j["opposite"] = true;
    std::swap(j["src"], j["dst"]);
    return j;
  }

private:
  B b_;
};

} // namespace segal
