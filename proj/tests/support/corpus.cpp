#include "corpus.hpp"

#include <random>

namespace tadic::testing {

std::vector<std::string> monomial_perturbations() {
  return {"0", "1", "x", "x + 1", "x**2", "x xor 5"};
}

std::vector<CorpusEntry> build_corpus(std::uint64_t seed, std::size_t random_polys) {
  std::vector<CorpusEntry> corpus;
  const auto dsl = [&](const std::string& text) { corpus.push_back({text, map_from_text(text)}); };

  dsl("x");
  dsl("x + 1");
  dsl("x + 2");
  for (int c0 = 0; c0 < 8; ++c0) {
    for (int c1 = 0; c1 < 8; ++c1) {
      corpus.push_back({"affine(" + std::to_string(c0) + "," + std::to_string(c1) + ")",
                        affine(c0, c1)});
    }
  }
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      for (std::uint64_t c = 0; c < 8; ++c) {
        const auto p = polynomial({a, b, c});
        corpus.push_back({p.describe(), p});
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> degree(1, 4);
  std::uniform_int_distribution<std::uint64_t> coeff(0, 15);
  for (std::size_t i = 0; i < random_polys; ++i) {
    std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(degree(rng)) + 1);
    for (auto& c : coeffs) c = coeff(rng);
    const auto p = polynomial(coeffs);
    corpus.push_back({p.describe(), p});
  }
  for (int c : {1, 3, 5, 7}) {
    dsl("x xor " + std::to_string(c));
    dsl("x + (x and " + std::to_string(c) + ")");
  }
  for (std::uint64_t s = 1; s <= 16; ++s) {
    for (unsigned r = 1; r <= 3; ++r) {
      for (const auto& u : monomial_perturbations()) {
        const auto f = perturbed_monomial(s, r, map_from_text(u));
        corpus.push_back({f.describe(), f});
      }
    }
  }
  return corpus;
}

}  // namespace tadic::testing
