#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mhad/designs.hpp"
#include "mhad/error.hpp"
#include "mhad/number_theory.hpp"
#include "mhad/sign_matrix.hpp"

namespace mhad {

// ---------------------------------------------------------------------------
// Necessary conditions
// ---------------------------------------------------------------------------

enum class ObstructionKind { QuadraticNonResidue, CountingBound, EvenModulusParity, DoublyEvenParity };

std::string to_string(ObstructionKind kind);

struct Obstruction {
  ObstructionKind kind{};
  std::int64_t n = 0;
  std::int64_t m = 0;
  // CountingBound: r in [1, m-1] with r == 2^(phi(m)-2) n (mod m), and bound = 4r > n.
  std::int64_t r = 0;
  std::int64_t bound = 0;
  // QuadraticNonResidue: n mod m. Parity kinds: n mod 2 or n mod 4.
  std::int64_t residue = 0;
  std::vector<std::int64_t> squares;  // QuadraticNonResidue only

  friend bool operator==(const Obstruction&, const Obstruction&) = default;
};

// n odd, gcd(n, m) = 1 and n not a square mod m.
std::optional<Obstruction> quadratic_obstruction(std::int64_t n, std::int64_t m);

// m odd >= 3, n >= 3, n != 0 (mod m): an MH(n, m) needs n >= 4r.
std::optional<Obstruction> counting_obstruction(std::int64_t n, std::int64_t m);

// n >= 3: even m forces even n; m == 0 (mod 4) forces n == 0 (mod 4).
std::optional<Obstruction> parity_obstruction(std::int64_t n, std::int64_t m);

// Re-derives the obstruction from (n, m) and checks every stored detail.
bool obstruction_holds(const Obstruction& o);

// ---------------------------------------------------------------------------
// Recipes
// ---------------------------------------------------------------------------

struct Recipe;
struct DesignSource;
using RecipePtr = std::shared_ptr<const Recipe>;
using DesignSourcePtr = std::shared_ptr<const DesignSource>;

struct DesignSource {
  struct Catalog {
    CatalogName name;
  };
  struct CoreOf {
    RecipePtr recipe;
  };
  struct Complement {
    DesignSourcePtr of;
  };
  struct ExampleBlock26 {};

  std::variant<Catalog, CoreOf, Complement, ExampleBlock26> source;
};

// Each node records the order it builds and the modulus it claims; nodes are
// checked against their own claim when materialized.
struct Recipe {
  struct Base {
    CanonicalKind kind;
  };
  struct Kron {
    RecipePtr left, right;
  };
  struct TwoDesign {
    DesignSourcePtr design;
  };
  struct DirectSum {
    DesignSourcePtr first, second;
  };

  std::variant<Base, Kron, TwoDesign, DirectSum> node;
  std::int64_t order = 0;
  std::int64_t modulus = 0;  // 0 = exact
};

RecipePtr make_base(CanonicalKind kind, std::int64_t n, std::int64_t m);
RecipePtr make_kron(RecipePtr left, RecipePtr right, std::int64_t m);
RecipePtr make_two_design(DesignSourcePtr design, std::int64_t m);
RecipePtr make_direct_sum(DesignSourcePtr first, DesignSourcePtr second, std::int64_t m);
DesignSourcePtr make_catalog_source(CatalogName name);
DesignSourcePtr make_core_source(RecipePtr recipe);
DesignSourcePtr make_complement_source(DesignSourcePtr of);
DesignSourcePtr make_example_block_source();

std::int64_t design_order(const DesignSource& source);
// Parameters the source claims at modulus m, computed without materializing.
DesignParams design_params(const DesignSource& source, std::int64_t m);

// Height of the recipe tree: base nodes have depth 0; CoreOf passes through.
int recipe_depth(const Recipe& recipe);

bool recipes_equal(const Recipe& a, const Recipe& b);

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

struct Certificate {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::variant<RecipePtr, Obstruction> outcome;

  bool exists() const noexcept { return std::holds_alternative<RecipePtr>(outcome); }
  const Recipe& recipe() const { return *std::get<RecipePtr>(outcome); }
  const Obstruction& obstruction() const { return std::get<Obstruction>(outcome); }
};

bool is_supported_modulus(std::int64_t m) noexcept;

// Decides MH(n, m) for m in {2,...,6}: either a recipe or an obstruction.
Certificate decide(std::int64_t n, std::int64_t m);

// Raised when a recipe node fails a check; path names the failing subtree.
class MaterializationError : public Error {
public:
  MaterializationError(std::string path, const std::string& reason)
      : Error(ErrorCode::Internal, "recipe node " + path + ": " + reason), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

// Builds the matrix bottom-up; every node is verified against its claimed
// modulus and the result against m.
SignMatrix materialize(const Recipe& recipe, std::int64_t m);
ModularDesign materialize_design(const DesignSource& source, std::int64_t m);

// Exists: materializes and verifies. NotExists: re-derives the obstruction.
bool check_certificate(const Certificate& certificate);

std::string explain(const Certificate& certificate);

}  // namespace mhad
