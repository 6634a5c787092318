#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "conslaw/rational.hpp"

namespace conslaw {

/// Hard cap on grid offsets supported by the variable encoding. The runtime
/// stencil window (default |k|,|l| <= 4) is validated separately by the
/// stencil operators; the encoding just needs enough headroom for the
/// shifted intermediates produced by the discrete Euler operator.
inline constexpr int kGridOffsetCap = 8;

/// Default stencil window: grid offsets of a well-formed expression satisfy
/// |k|,|l| <= kDefaultWindow.
inline constexpr int kDefaultWindow = 4;

/// Maximal single partial-derivative order representable as a jet symbol.
inline constexpr int kJetOrderCap = 12;

enum class VarKind : std::uint8_t {
  GridValue,  ///< U at grid offset (k,l) from the stencil center
  TimeCoord,  ///< t at the stencil center
  SpaceCoord, ///< x at the stencil center
  TimeStep,   ///< tau (Laurent exponents allowed)
  SpaceStep,  ///< h   (Laurent exponents allowed)
  Aux,        ///< group parameters eps, lam
  Jet,        ///< jet symbol u_{i,j} = d^{i+j} u / dt^i dx^j
};

/// A symbol of the stencil/jet algebra, identified by a dense ordinal.
///
/// The ordinal induces the deterministic variable enumeration every
/// canonical order in this library is based on: grid values sorted by
/// (k,l), then t, x, h, tau, the aux symbols, then jet symbols sorted by
/// (i,j). Two Vars are equal iff their ordinals are.
class Var {
 public:
  static constexpr int kGridSpan = 2 * kGridOffsetCap + 1;
  static constexpr int kGridCount = kGridSpan * kGridSpan;

  static Var grid(int k, int l) {
    if (k < -kGridOffsetCap || k > kGridOffsetCap || l < -kGridOffsetCap ||
        l > kGridOffsetCap)
      throw Error("grid offset (" + std::to_string(k) + "," +
                  std::to_string(l) + ") exceeds the encoding cap " +
                  std::to_string(kGridOffsetCap));
    return Var(static_cast<std::uint16_t>((k + kGridOffsetCap) * kGridSpan +
                                          (l + kGridOffsetCap)));
  }
  static Var t() { return Var(kGridCount + 0); }
  static Var x() { return Var(kGridCount + 1); }
  static Var h() { return Var(kGridCount + 2); }
  static Var tau() { return Var(kGridCount + 3); }
  static Var eps() { return Var(kGridCount + 4); }
  static Var lam() { return Var(kGridCount + 5); }
  static Var jet(int i, int j) {
    if (i < 0 || j < 0 || i > kJetOrderCap || j > kJetOrderCap)
      throw Error("jet order (" + std::to_string(i) + "," + std::to_string(j) +
                  ") out of range");
    return Var(static_cast<std::uint16_t>(kGridCount + 6 +
                                          i * (kJetOrderCap + 1) + j));
  }

  VarKind kind() const {
    if (ord_ < kGridCount) return VarKind::GridValue;
    switch (ord_ - kGridCount) {
      case 0: return VarKind::TimeCoord;
      case 1: return VarKind::SpaceCoord;
      case 2: return VarKind::SpaceStep;   // h
      case 3: return VarKind::TimeStep;    // tau
      case 4:
      case 5: return VarKind::Aux;
      default: return VarKind::Jet;
    }
  }

  bool is_grid() const { return ord_ < kGridCount; }
  bool is_jet() const { return ord_ >= kGridCount + 6; }
  /// Only the mesh steps h and tau admit negative (Laurent) exponents.
  bool allows_laurent() const {
    return ord_ == kGridCount + 2 || ord_ == kGridCount + 3;
  }

  int grid_k() const { return ord_ / kGridSpan - kGridOffsetCap; }
  int grid_l() const { return ord_ % kGridSpan - kGridOffsetCap; }
  int jet_i() const { return (ord_ - kGridCount - 6) / (kJetOrderCap + 1); }
  int jet_j() const { return (ord_ - kGridCount - 6) % (kJetOrderCap + 1); }

  /// Total derivative order of a jet symbol; 0 for everything else.
  int jet_weight() const { return is_jet() ? jet_i() + jet_j() : 0; }

  std::string name() const {
    switch (kind()) {
      case VarKind::GridValue:
        return "U[" + std::to_string(grid_k()) + "," +
               std::to_string(grid_l()) + "]";
      case VarKind::TimeCoord: return "t";
      case VarKind::SpaceCoord: return "x";
      case VarKind::SpaceStep: return "h";
      case VarKind::TimeStep: return "tau";
      case VarKind::Aux: return ord_ == kGridCount + 4 ? "eps" : "lam";
      case VarKind::Jet:
        return "u[" + std::to_string(jet_i()) + "," + std::to_string(jet_j()) +
               "]";
    }
    return "?";
  }

  std::uint16_t ordinal() const { return ord_; }

  friend bool operator==(Var a, Var b) { return a.ord_ == b.ord_; }
  friend bool operator!=(Var a, Var b) { return a.ord_ != b.ord_; }
  friend bool operator<(Var a, Var b) { return a.ord_ < b.ord_; }

 private:
  explicit Var(std::uint16_t ord) : ord_(ord) {}
  std::uint16_t ord_;
};

}  // namespace conslaw
