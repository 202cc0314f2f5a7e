#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bordcalc/abelian.hpp"
#include "bordcalc/lattice.hpp"
#include "bordcalc/space.hpp"
#include "bordcalc/text_format.hpp"

namespace bordcalc {

struct Pos {
  int p = 0;
  int q = 0;
  int degree() const { return p + q; }
  auto operator<=>(const Pos&) const = default;
};

std::string to_string(const Pos& pos);  // "(p,q)"

// "Z + Z/2 : a, b"; labels carry their order in brackets when the summands merge under normalization.
std::string labeled_group_text(const std::vector<Integer>& orders, const std::vector<std::string>& labels);

// One cyclic summand of an E² entry, remembering where it came from.
struct E2Generator {
  enum class Kind { Integral, Mod2, Tensor, Tor };
  Integer order;
  std::string label;
  std::size_t coeff_index = 0;  // summand of the coefficient group
  Kind kind = Kind::Integral;
  std::size_t hom_index = 0;  // generator of H_p (or H_{p−1} for Tor) in the descriptor's order
};

// E²_{p,q} = H_p(T; coeff(q)) as a list of cyclic summands.
std::vector<E2Generator> e2_generators(const SpaceDescriptor& space, const CoefficientRow& row, int p, int q);

// E^r_{p,q} kept as a subquotient Z/B of the E² summands. For entries touched by an undetermined
// differential the stored Z contains the true cycles and the stored B lies inside the true boundaries.
struct PageEntry {
  bool known = true;
  std::vector<E2Generator> basis;
  lattice::Subquotient sub;
  bool cycles_exact = true;
  bool boundaries_exact = true;
  std::set<std::string> image_params;   // unknown differentials landing here
  std::set<std::string> kernel_params;  // unknown differentials leaving here

  std::vector<Integer> ambient_orders() const;
  FGAbelianGroup group() const { return sub.group(); }
  bool is_zero() const { return known && sub.is_zero(); }
  bool exact() const { return known && cycles_exact && boundaries_exact && image_params.empty() && kernel_params.empty(); }
  // Labels of the current generators written in E² labels, e.g. "2β3".
  std::vector<std::string> generator_labels() const;
  std::string vector_label(const std::vector<Integer>& ambient) const;
  // "Z : 2β3", "Z / im(k) : β2β3" or "? (no data)".
  std::string str() const;
  std::string group_text() const;
};

struct SSPage {
  int r = 2;
  std::map<Pos, PageEntry> entries;
  const PageEntry* find(const Pos& pos) const;
};

enum class DiffStatus {
  Vanishing,      // forced by the shape of source or target
  Computed,       // d² from the dual of Sq²
  AssertedZero,   // hint
  AssertedValue,  // hint
  Deduced,        // naturality along a morphism
  Parameter,      // unknown, carried symbolically
  Undetermined
};
std::string to_string(DiffStatus s);

struct Differential {
  int r = 2;
  Pos source;
  Pos target;
  DiffStatus status = DiffStatus::Undetermined;
  // Rows: generators of the target E^r, columns: generators of the source E^r.
  IntMatrix matrix;
  std::string parameter;
  std::string note;

  bool determined() const { return status != DiffStatus::Parameter && status != DiffStatus::Undetermined; }
  bool is_zero() const { return determined() && matrix.is_zero(); }
};

// The ambient-level d² matrix (target E² summands × source E² summands), spin rows q = 0, 1 only.
IntMatrix d2_ambient(const SpaceDescriptor& space, const CoefficientRow& row, int p, int q);
// d² as a differential on the E² page.
Differential d2(const SpaceDescriptor& space, const CoefficientRow& row, const SSPage& page, int p, int q);
// Writes an ambient-level map between two entries in their current generators.
IntMatrix page_coordinates(const PageEntry& source, const PageEntry& target, const IntMatrix& ambient);

// E^{r+1} from E^r; the differentials are those of page r. Checks d∘d = 0.
SSPage turn_page(const SSPage& page, const std::vector<Differential>& diffs);

// ---------------------------------------------------------------------------------------------
// Morphisms between spectral sequences

struct DegreeMap {
  bool known = false;
  IntMatrix matrix;  // target generators × source generators
};

class SSMorphism {
 public:
  enum class Flag { Iso, Zero, Unknown, Other };

  std::string name;
  SpacePtr source;
  SpacePtr target;
  int shift = 0;
  std::map<int, DegreeMap> integral;  // by source degree
  std::map<int, DegreeMap> mod2;

  // E² map (p,q) → (p+shift,q) in the E² summands; nullopt when some needed block is unknown.
  std::optional<IntMatrix> e2_map(const CoefficientRow& row, int p, int q) const;
  Flag flag(const CoefficientRow& row, int p, int q) const;

  // Reduction compatibility, Tor naturality and commutation with computed d² on both sides.
  void validate(const CoefficientRow& row) const;
};

// Parses the body of a "morphism" block.
SSMorphism parse_morphism(const std::string& name, SpacePtr source, SpacePtr target, int shift,
                          const std::vector<text::Line>& body, const std::string& source_name);

// ---------------------------------------------------------------------------------------------
// Hints

struct DiffHint {
  enum class Kind { Zero, Value, Parameter, Deduce };
  int r = 0;
  Pos source;
  Kind kind = Kind::Zero;
  std::vector<std::pair<std::string, std::string>> value;  // source label → target terms
  std::string name;                                        // parameter or morphism
  std::string justification;
  int line = 0;
};

struct ExtHint {
  enum class Kind { Naturality, Trivial, Nontrivial };
  int n = 0;
  int p = 0;
  Kind kind = Kind::Naturality;
  std::string morphism;
  std::string justification;
};

struct TotalHint {
  int n = 0;
  FGAbelianGroup group;
  std::string justification;
};

struct UseClause {
  std::string alias;
  std::string space_path;
  std::optional<std::string> hints_path;
};

struct MorphismBlock {
  std::string name;
  std::string target_alias;
  int shift = 0;
  std::vector<text::Line> body;
};

struct HintSet {
  std::string source = "<hints>";
  std::vector<UseClause> uses;
  std::vector<MorphismBlock> morphisms;
  std::vector<DiffHint> differentials;
  std::vector<ExtHint> extensions;
  std::vector<TotalHint> totals;

  const DiffHint* find_differential(int r, const Pos& source) const;
  const ExtHint* find_extension(int n, int p) const;
  const TotalHint* find_total(int n) const;
};

HintSet parse_hints(const std::string& document, const std::string& source = "<hints>");

// ---------------------------------------------------------------------------------------------
// Filtrations and extensions

enum class ExtStatus { Split, Nontrivial, Open };
enum class ReportStatus { Resolved, Parametric, Unresolved };
std::string to_string(ExtStatus s);
std::string to_string(ReportStatus s);

struct FiltrationPiece {
  Pos pos;
  PageEntry entry;
};

struct StageGenerator {
  Integer order;
  std::string base;
  Integer divisor = 1;
  std::string label() const;
};

// The filtration stage F_p once its group is pinned down.
struct Stage {
  std::vector<StageGenerator> gens;
  FGAbelianGroup group() const;
  std::string str() const;
  bool torsion_free() const;
};

struct ExtensionRecord {
  int p = 0;
  ExtStatus status = ExtStatus::Open;
  std::string tag;  // free-quotient | naturality-map | known-total | user-asserted
  std::string note;
};

struct FiltrationReport {
  int n = 0;
  std::vector<FiltrationPiece> pieces;  // nonzero or inexact pieces, increasing p
  std::vector<ExtensionRecord> extensions;  // one per piece after the first
  std::vector<std::optional<Stage>> stages;  // F_p after each piece
  ReportStatus status = ReportStatus::Resolved;
  std::string reason;

  std::optional<Stage> result() const;
  // The stage reached at filtration p (zero before the first piece); nullopt when undetermined.
  std::optional<Stage> stage_at(int p) const;
  std::string group_text() const;  // "Z^2", "Z / im(k)", "?"
};

struct ExtensionResolution {
  ExtStatus status = ExtStatus::Open;
  std::optional<FGAbelianGroup> group;
  std::string note;
};

// 0 → previous → F → quotient → 0 mapped into a filtration stage of another sequence.
// quotient_map: the induced map on the quotient piece; target_stage: the receiving stage, if known.
ExtensionResolution resolve_extension_via_map(const FGAbelianGroup& previous, const GroupMorphism& quotient_map,
                                              const std::optional<FGAbelianGroup>& target_stage);

struct TotalResolution {
  std::vector<ExtStatus> steps;                     // one per piece after the first
  std::vector<std::optional<FGAbelianGroup>> stages;  // one per piece
};

// Finds every split/absorbed assignment of the torsion in the pieces that reproduces the total.
TotalResolution resolve_extensions_from_total(const FGAbelianGroup& total, const std::vector<FGAbelianGroup>& pieces);

// ---------------------------------------------------------------------------------------------
// Runs

using DocumentLoader = std::function<std::string(const std::string& path)>;
DocumentLoader file_loader();
std::string join_path(const std::string& base_file, const std::string& relative);

struct RunRequest {
  std::string space_path;
  std::optional<std::string> hints_path;
  std::shared_ptr<const CoefficientRow> row;
  int upto = 8;
  bool unreduced = false;
};

class Workspace;

struct SSRun {
  SpacePtr space;
  std::shared_ptr<const CoefficientRow> row;
  int upto = 0;
  HintSet hints;
  std::map<std::string, SSMorphism> morphisms;
  std::map<std::string, std::shared_ptr<const SSRun>> targets;  // by morphism name
  std::vector<SSPage> pages;                                    // pages[i] is E^{i+2}
  std::vector<std::vector<Differential>> differentials;         // differentials[i] act on pages[i]
  std::map<int, FiltrationReport> reports;                      // n = 0..upto

  const SSPage& page(int r) const { return pages.at(static_cast<std::size_t>(r - 2)); }
  const SSPage& infinity() const { return pages.back(); }
  ReportStatus overall() const;
  // The computed groups as a coefficient row for a second-stage sequence.
  CoefficientRow as_row(const std::string& name) const;
};

// The naturality test of a morphism on d^r_{p,q}; true when the differential must vanish.
struct DeduceResult {
  bool vanishes = false;
  std::string note;
};
DeduceResult deduce_vanishing(const SSMorphism& m, const CoefficientRow& row, const SSPage& source_page,
                              const SSPage& target_page, int r, const Pos& pos);

FiltrationReport assemble(const SSRun& run, int n);

class Workspace {
 public:
  explicit Workspace(DocumentLoader loader = file_loader());

  std::shared_ptr<const SSRun> run(const RunRequest& request);
  SpacePtr space(const std::string& path, bool unreduced);
  const DocumentLoader& loader() const { return loader_; }

 private:
  DocumentLoader loader_;
  std::map<std::string, SpacePtr> spaces_;
  std::map<std::string, std::shared_ptr<const SSRun>> runs_;
  std::set<std::string> in_progress_;
};

// ---------------------------------------------------------------------------------------------
// Rendering

enum class OutputFormat { Table, KeyValue };
std::string render(const SSRun& run, OutputFormat format);

}  // namespace bordcalc
