#pragma once

#include "dsamp/conflict.hpp"
#include "dsamp/groups.hpp"
#include "dsamp/solution.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dsamp {

enum class ModelKind { Pairing, Naive, NaiveStrengthened, InducedPath, GeneralPath };

std::string to_string(ModelKind k);
ModelKind parse_model_kind(const std::string &s);

// Variable roles, one per symbol of the formulations.
enum class VarRole {
  ColorUsed,    // l_i
  VertexColor,  // z_i_v
  EdgeColor,    // xe_i_u_v
  OrientedEdge, // xo_i_kappa_u_v
  PathStart,    // ys_i_v
  PathOrigin,   // yo_i_v_o
  GroupColor,   // xg_i_g
};

struct Variable {
  std::string name;
  VarRole role = VarRole::ColorUsed;
  int color = 0;
};

enum class Sense { Le, Ge, Eq };

struct Term {
  int var = 0;
  std::int64_t coef = 1;
  bool operator==(const Term &) const = default;
};

struct Constraint {
  std::string name;
  std::string family; // leading token of the name
  int color = 0;      // 0 for constraints spanning several colors
  std::vector<Term> terms;
  Sense sense = Sense::Le;
  std::int64_t rhs = 0;
};

/// Solver-agnostic binary program: minimize the sum of the objective
/// variables subject to linear constraints. Names are unique; adding a
/// duplicate throws instead of renaming.
class IpModel {
public:
  IpModel() = default;
  explicit IpModel(ModelKind kind) : kind_(kind) {}

  ModelKind kind() const { return kind_; }
  const std::vector<Variable> &variables() const { return vars_; }
  const std::vector<Constraint> &constraints() const { return cons_; }
  const std::vector<int> &objective() const { return objective_; }

  int add_variable(std::string name, VarRole role, int color);
  void add_constraint(std::string name, int color, std::vector<Term> terms,
                      Sense sense, std::int64_t rhs);
  void add_objective(int var) { objective_.push_back(var); }

  std::optional<int> find(const std::string &name) const;
  int at(const std::string &name) const;

private:
  ModelKind kind_ = ModelKind::Pairing;
  std::vector<Variable> vars_;
  std::vector<Constraint> cons_;
  std::vector<int> objective_;
  std::unordered_map<std::string, int> index_;
  std::unordered_map<std::string, int> cons_index_;
};

struct ModelOptions {
  int colors = 5; // L
  bool symmetry_breaking = true;
  std::size_t max_variables = 10'000'000;
};

struct ModelSize {
  std::size_t variables = 0;
  std::size_t constraints = 0;
};

/// Pairing model: each color class is a disjoint union of vertices and
/// DSA edges. `bends` adds z_u + z_v + z_w <= 2 per triple and color.
IpModel build_pairing(const ConflictGraph &g, const ModelOptions &opts,
                      std::span<const Triple> bends = {});

/// Group-assignment model over an enumerated catalog. The strengthened form
/// replaces pairwise packing rows with one clique row per conflicting vertex
/// pair and color.
IpModel build_naive(const GroupCatalog &catalog, const ConflictGraph &g,
                    const ModelOptions &opts, bool strengthened = false);

/// Oriented-position flow model: color classes are disjoint induced paths
/// of at most k vertices along DSA edges.
IpModel build_induced_path(const ConflictGraph &g, int k,
                           const ModelOptions &opts,
                           std::span<const Triple> bends = {});

/// Origin-labelled model: each connected part of a color class admits a
/// Hamiltonian path of at most k vertices. Throws ModelTooLarge above
/// opts.max_variables without allocating the model.
IpModel build_general(const ConflictGraph &g, int k, const ModelOptions &opts,
                      std::span<const Triple> bends = {});

/// Closed-form variable count of the general model.
std::size_t general_variable_count(std::size_t n, std::size_t dsa_edges, int k,
                                   int colors);

ModelSize model_size(const IpModel &m);

/// CPLEX LP text: Minimize / Subject To / Binary / End, deterministic.
void write_lp(std::ostream &out, const IpModel &m);
void export_lp(const IpModel &m, const std::filesystem::path &path);
IpModel parse_lp(std::istream &in);

using Assignment = std::unordered_map<std::string, double>;

struct Violation {
  std::string name;
  std::string family;
  double lhs = 0.0;
  Sense sense = Sense::Le;
  std::int64_t rhs = 0;
};

struct CheckResult {
  bool valid = false;
  std::size_t violation_count = 0;
  std::vector<Violation> violations; // first max_violations
  std::vector<std::string> non_binary;
  std::vector<std::string> unknown; // assignment names absent from the model
  double objective = 0.0;
};

struct CheckOptions {
  std::size_t max_violations = 100;
  // When set, only constraints local to this color are evaluated.
  std::optional<int> color;
  // Accept fractional values (LP-relaxation points).
  bool relaxed = false;
};

/// Evaluates every constraint of `m` at `a`. Throws MissingVariables when
/// a model variable has no value.
CheckResult check_solution(const IpModel &m, const Assignment &a,
                           const CheckOptions &opts = {});

/// Maps a group coloring onto the variables of a model built from the same
/// graph (and catalog, for the naive models). Unset variables are 0.
Assignment encode_solution(const IpModel &m, const ConflictGraph &g,
                           const GroupCatalog *catalog,
                           const ColoringSolution &s);

void write_assignment(std::ostream &out, const IpModel &m, const Assignment &a);
/// Lines `<name> <value>`; an optional `objective <value>` line is returned
/// through `claimed_objective`.
Assignment read_assignment(std::istream &in,
                           std::optional<double> *claimed_objective = nullptr);

} // namespace dsamp
