#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bordcalc/abelian.hpp"
#include "bordcalc/ahss.hpp"
#include "bordcalc/errors.hpp"
#include "bordcalc/picard.hpp"
#include "bordcalc/space.hpp"

namespace bordcalc {

// ---------------------------------------------------------------------------------------------
// Lie group expressions: ATOM := NAME ["(" INT ")"], EXPR := ATOM {"x" ATOM} ["/K"]

struct GroupAtom {
  std::string name;
  std::optional<int> param;
  std::string str() const;
  friend bool operator==(const GroupAtom&, const GroupAtom&) = default;
};

struct GroupExpr {
  std::vector<GroupAtom> factors;
  bool quotient = false;  // divided by some finite normal subgroup
  std::string str() const;
  friend bool operator==(const GroupExpr&, const GroupExpr&) = default;
};

class GroupExprError : public InputError {
 public:
  GroupExprError(std::size_t offset, const std::string& message);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

GroupExpr parse_group(const std::string& text);

// Families taking a parameter and the parameter-free exceptional groups.
const std::vector<std::string>& parametric_families();   // SU, U, Sp, Spin, SO, PSU
const std::vector<std::string>& exceptional_groups();    // E6, E7, E8, F4, G2
bool is_recognized(const GroupAtom& atom);

// Spin(3) → SU(2), Spin(5) → Sp(2), Spin(6) → SU(4), Sp(1) → SU(2), SO(2) → U(1),
// SO(m) → Spin(m) with the quotient flag, PSU(m) → SU(m) with the quotient flag.
GroupExpr normalize(const GroupExpr& g);

// ---------------------------------------------------------------------------------------------
// Orientability of gauge moduli spaces in dimensions 7 and 8

enum class AtomClass { Good, Bad };
AtomClass classify_atom(const GroupAtom& normalized);

struct OrientabilityVerdict {
  bool orientable_all = false;
  bool simply_connected_only = false;  // holds for simply-connected base manifolds
  std::string counterexample;          // named manifold when not orientable
  std::string offending_factor;
  std::string str() const;  // "ORIENTABLE-ALL", "ORIENTABLE-ALL [simply-connected]", "COUNTEREXAMPLE: ..."
};

OrientabilityVerdict classify_orientability(const GroupExpr& g, int n);

// ---------------------------------------------------------------------------------------------
// Complex type morphisms

struct ComplexTypeRecord {
  std::string source;
  std::string target;
  std::optional<int> p;  // connectivity of the restriction to the first factor, when listed
  std::string str() const;
};

std::optional<ComplexTypeRecord> complex_type(const GroupExpr& source, const GroupExpr& target);

// ---------------------------------------------------------------------------------------------
// Bordism of the point and homotopy of E8

enum class Structure { SO, O, Spin, SpinC, U, SU };
Structure parse_structure(const std::string& text);
std::string to_string(Structure s);
const std::vector<Structure>& all_structures();
int max_degree(Structure s);

LabeledGroup lookup_point_bordism(Structure s, int n);
// The whole tabulated row as an AHSS coefficient row (Spin carries the d² data).
CoefficientRow point_bordism_row(Structure s);

// π_d(E8) for 0 ≤ d ≤ 14, π_d(BE8) for 0 ≤ d ≤ 15.
FGAbelianGroup lookup_e8_homotopy(int d, bool classifying = true);

// (Ω_n, Ω_{n+1}) of B G for the trivial group G, with the symmetry invariant left unknown.
PicardData picard_from_bordism(Structure s, int n);

// ---------------------------------------------------------------------------------------------
// Fixture documents compiled into the binary

const std::map<std::string, std::string>& embedded_fixtures();
// Paths "builtin/<name>" come from the embedded set; everything else from the file system.
DocumentLoader registry_loader();
std::string export_document(const std::string& name);

}  // namespace bordcalc
