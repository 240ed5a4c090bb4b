#pragma once

#include <stdexcept>
#include <string>

namespace dqchain {

enum class HamiltonianKind { DQ, XX };

// Chain geometry and coupling. spacing defaults to the fluorapatite
// intra-chain 19F distance.
struct ChainSpec {
  int n_sites = 2;
  double coupling = 8.17e3;      // rad/s
  double spacing = 3.442e-10;    // m
  int replica_cap = -1;          // image-sum cutoff in Eq-5 style sums; -1 = auto

  void validate() const {
    if (n_sites < 2) throw std::invalid_argument("ChainSpec: n_sites must be >= 2");
    if (!(coupling > 0)) throw std::invalid_argument("ChainSpec: coupling must be > 0");
    if (!(spacing > 0)) throw std::invalid_argument("ChainSpec: spacing must be > 0");
  }
};

struct InitialState {
  enum class Kind { SingleSite, EndPolarized, Thermal };
  Kind kind = Kind::Thermal;
  int site = 1;  // only for SingleSite

  static InitialState single_site(int j) { return {Kind::SingleSite, j}; }
  static InitialState end_polarized() { return {Kind::EndPolarized, 1}; }
  static InitialState thermal() { return {Kind::Thermal, 1}; }

  void validate(int n_sites) const {
    if (kind == Kind::SingleSite && (site < 1 || site > n_sites))
      throw std::out_of_range("InitialState: site " + std::to_string(site) +
                              " outside chain of " + std::to_string(n_sites));
  }
};

}  // namespace dqchain
