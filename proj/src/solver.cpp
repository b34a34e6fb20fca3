#include "mhad/solver.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mhad/constructions.hpp"

namespace mhad {

std::string to_string(ObstructionKind kind) {
  switch (kind) {
    case ObstructionKind::QuadraticNonResidue: return "QuadraticNonResidue";
    case ObstructionKind::CountingBound: return "CountingBound";
    case ObstructionKind::EvenModulusParity: return "EvenModulusParity";
    case ObstructionKind::DoublyEvenParity: return "DoublyEvenParity";
  }
  return "?";
}

std::optional<Obstruction> quadratic_obstruction(std::int64_t n, std::int64_t m) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "quadratic_obstruction needs m >= 2");
  if (n % 2 == 0 || std::gcd(n, m) != 1) return std::nullopt;
  auto squares = squares_mod(m);
  const std::int64_t residue = mod(n, m);
  if (std::binary_search(squares.begin(), squares.end(), residue)) return std::nullopt;
  Obstruction o;
  o.kind = ObstructionKind::QuadraticNonResidue;
  o.n = n;
  o.m = m;
  o.residue = residue;
  o.squares = std::move(squares);
  return o;
}

std::optional<Obstruction> counting_obstruction(std::int64_t n, std::int64_t m) {
  if (m < 3 || m % 2 == 0) throw Error(ErrorCode::InvalidArgument, "counting_obstruction needs an odd m >= 3");
  if (n < 3 || n % m == 0) return std::nullopt;
  const std::int64_t r = pow_mod(2, euler_phi(m) - 2, m) * mod(n, m) % m;
  if (n >= 4 * r) return std::nullopt;
  Obstruction o;
  o.kind = ObstructionKind::CountingBound;
  o.n = n;
  o.m = m;
  o.r = r;
  o.bound = 4 * r;
  return o;
}

std::optional<Obstruction> parity_obstruction(std::int64_t n, std::int64_t m) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "parity_obstruction needs m >= 2");
  if (n < 3) return std::nullopt;
  Obstruction o;
  o.n = n;
  o.m = m;
  if (m % 2 == 0 && n % 2 != 0) {
    o.kind = ObstructionKind::EvenModulusParity;
    o.residue = mod(n, 2);
    return o;
  }
  if (m % 4 == 0 && n % 4 != 0) {
    o.kind = ObstructionKind::DoublyEvenParity;
    o.residue = mod(n, 4);
    return o;
  }
  return std::nullopt;
}

bool obstruction_holds(const Obstruction& o) {
  if (o.m < 2) return false;
  std::optional<Obstruction> expected;
  switch (o.kind) {
    case ObstructionKind::QuadraticNonResidue:
      expected = quadratic_obstruction(o.n, o.m);
      break;
    case ObstructionKind::CountingBound:
      if (o.m < 3 || o.m % 2 == 0) return false;
      expected = counting_obstruction(o.n, o.m);
      break;
    case ObstructionKind::EvenModulusParity:
    case ObstructionKind::DoublyEvenParity:
      expected = parity_obstruction(o.n, o.m);
      break;
  }
  return expected && *expected == o;
}

// ---------------------------------------------------------------------------

RecipePtr make_base(CanonicalKind kind, std::int64_t n, std::int64_t m) {
  switch (kind) {
    case CanonicalKind::F1: n = 1; break;
    case CanonicalKind::F2: n = 2; break;
    case CanonicalKind::H12: n = 12; break;
    default: break;
  }
  return std::make_shared<const Recipe>(Recipe{Recipe::Base{kind}, n, m});
}

RecipePtr make_kron(RecipePtr left, RecipePtr right, std::int64_t m) {
  const std::int64_t n = left->order * right->order;
  return std::make_shared<const Recipe>(Recipe{Recipe::Kron{std::move(left), std::move(right)}, n, m});
}

RecipePtr make_two_design(DesignSourcePtr design, std::int64_t m) {
  const std::int64_t n = design_order(*design);
  return std::make_shared<const Recipe>(Recipe{Recipe::TwoDesign{std::move(design)}, n, m});
}

RecipePtr make_direct_sum(DesignSourcePtr first, DesignSourcePtr second, std::int64_t m) {
  const std::int64_t n = design_order(*first) + design_order(*second);
  return std::make_shared<const Recipe>(Recipe{Recipe::DirectSum{std::move(first), std::move(second)}, n, m});
}

DesignSourcePtr make_catalog_source(CatalogName name) {
  return std::make_shared<const DesignSource>(DesignSource{DesignSource::Catalog{name}});
}
DesignSourcePtr make_core_source(RecipePtr recipe) {
  return std::make_shared<const DesignSource>(DesignSource{DesignSource::CoreOf{std::move(recipe)}});
}
DesignSourcePtr make_complement_source(DesignSourcePtr of) {
  return std::make_shared<const DesignSource>(DesignSource{DesignSource::Complement{std::move(of)}});
}
DesignSourcePtr make_example_block_source() {
  return std::make_shared<const DesignSource>(DesignSource{DesignSource::ExampleBlock26{}});
}

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

std::int64_t design_order(const DesignSource& source) {
  return std::visit(Overloaded{
                        [](const DesignSource::Catalog& c) -> std::int64_t {
                          if (c.name == CatalogName::D26) return 26;
                          return catalog_exact_params(c.name)->v;
                        },
                        [](const DesignSource::CoreOf& c) -> std::int64_t { return c.recipe->order - 1; },
                        [](const DesignSource::Complement& c) -> std::int64_t { return design_order(*c.of); },
                        [](const DesignSource::ExampleBlock26&) -> std::int64_t { return 26; },
                    },
                    source.source);
}

DesignParams design_params(const DesignSource& source, std::int64_t m) {
  return std::visit(Overloaded{
                        [m](const DesignSource::Catalog& c) {
                          if (c.name == CatalogName::D26) return DesignParams(26, 1, 2, m);
                          const auto e = *catalog_exact_params(c.name);
                          return DesignParams(e.v, e.k, e.lambda, m);
                        },
                        [m](const DesignSource::CoreOf& c) { return core_design_params(c.recipe->order, m); },
                        [m](const DesignSource::Complement& c) {
                          const auto p = design_params(*c.of, m);
                          return DesignParams(p.v(), p.v() - p.k(), p.v() - 2 * p.k() + p.lambda(), m);
                        },
                        [m](const DesignSource::ExampleBlock26&) { return DesignParams(26, 1, 2, m); },
                    },
                    source.source);
}

namespace {

int source_depth(const DesignSource& source);

int depth_of(const Recipe& recipe) {
  return std::visit(Overloaded{
                        [](const Recipe::Base&) { return 0; },
                        [](const Recipe::Kron& k) { return 1 + std::max(depth_of(*k.left), depth_of(*k.right)); },
                        [](const Recipe::TwoDesign& t) { return 1 + source_depth(*t.design); },
                        [](const Recipe::DirectSum& d) {
                          return 1 + std::max(source_depth(*d.first), source_depth(*d.second));
                        },
                    },
                    recipe.node);
}

int source_depth(const DesignSource& source) {
  return std::visit(Overloaded{
                        [](const DesignSource::CoreOf& c) { return depth_of(*c.recipe); },
                        [](const DesignSource::Complement& c) { return source_depth(*c.of); },
                        [](const auto&) { return -1; },
                    },
                    source.source);
}

bool sources_equal(const DesignSource& a, const DesignSource& b);

}  // namespace

int recipe_depth(const Recipe& recipe) { return depth_of(recipe); }

namespace {

bool sources_equal(const DesignSource& a, const DesignSource& b) {
  if (a.source.index() != b.source.index()) return false;
  return std::visit(Overloaded{
                        [&](const DesignSource::Catalog& c) {
                          return c.name == std::get<DesignSource::Catalog>(b.source).name;
                        },
                        [&](const DesignSource::CoreOf& c) {
                          return recipes_equal(*c.recipe, *std::get<DesignSource::CoreOf>(b.source).recipe);
                        },
                        [&](const DesignSource::Complement& c) {
                          return sources_equal(*c.of, *std::get<DesignSource::Complement>(b.source).of);
                        },
                        [](const DesignSource::ExampleBlock26&) { return true; },
                    },
                    a.source);
}

}  // namespace

bool recipes_equal(const Recipe& a, const Recipe& b) {
  if (a.order != b.order || a.modulus != b.modulus || a.node.index() != b.node.index()) return false;
  return std::visit(Overloaded{
                        [&](const Recipe::Base& x) { return x.kind == std::get<Recipe::Base>(b.node).kind; },
                        [&](const Recipe::Kron& x) {
                          const auto& y = std::get<Recipe::Kron>(b.node);
                          return recipes_equal(*x.left, *y.left) && recipes_equal(*x.right, *y.right);
                        },
                        [&](const Recipe::TwoDesign& x) {
                          return sources_equal(*x.design, *std::get<Recipe::TwoDesign>(b.node).design);
                        },
                        [&](const Recipe::DirectSum& x) {
                          const auto& y = std::get<Recipe::DirectSum>(b.node);
                          return sources_equal(*x.first, *y.first) && sources_equal(*x.second, *y.second);
                        },
                    },
                    a.node);
}

// ---------------------------------------------------------------------------
// Recipe tables
// ---------------------------------------------------------------------------

namespace {

RecipePtr f2() { return make_base(CanonicalKind::F2, 2, 0); }

RecipePtr recipe_mod3(std::int64_t n) {
  if (n == 1) return make_base(CanonicalKind::F1, 1, 0);
  if (n % 3 == 0) return make_base(CanonicalKind::AllOnes, n, 3);
  if (n % 3 == 1) return make_base(CanonicalKind::JMinusTwoI, n, 3);
  if (n % 6 == 2) return make_kron(f2(), recipe_mod3(n / 2), 3);
  return nullptr;
}

RecipePtr recipe_mod5(std::int64_t n) {
  if (n == 1) return make_base(CanonicalKind::F1, 1, 0);
  if (n % 5 == 0) return make_base(CanonicalKind::AllOnes, n, 5);
  if (n % 5 == 4) return make_base(CanonicalKind::JMinusTwoI, n, 5);
  if (n % 10 == 8) return make_kron(f2(), make_base(CanonicalKind::JMinusTwoI, n / 2, 5), 5);
  if (n % 20 == 16) {
    return make_kron(f2(), make_kron(f2(), make_base(CanonicalKind::JMinusTwoI, n / 4, 5), 5), 5);
  }
  if (n == 21) return make_two_design(make_catalog_source(CatalogName::D21), 5);
  if (n == 26) return make_two_design(make_catalog_source(CatalogName::D26), 5);
  if (n % 20 == 11 && n >= 31) {
    auto inner = recipe_mod5(n - 15);
    if (!inner) return nullptr;
    return make_direct_sum(make_catalog_source(CatalogName::D16), make_core_source(std::move(inner)), 5);
  }
  if ((n % 20 == 1 || n % 20 == 6) && n >= 41) {
    auto inner = recipe_mod5(n - 25);
    if (!inner) return nullptr;
    return make_direct_sum(make_catalog_source(CatalogName::D26), make_core_source(std::move(inner)), 5);
  }
  if (n % 10 == 2) {
    // Halving would need MH(6,5) or MH(11,5) here.
    if (n == 12) return make_base(CanonicalKind::H12, 12, 0);
    if (n == 22) {
      return make_direct_sum(make_catalog_source(CatalogName::B11), make_catalog_source(CatalogName::B11C), 5);
    }
    auto half = recipe_mod5(n / 2);
    if (!half) return nullptr;
    return make_kron(f2(), std::move(half), 5);
  }
  return nullptr;
}

RecipePtr recipe_for(std::int64_t n, std::int64_t m) {
  if (n == 1) return make_base(CanonicalKind::F1, 1, 0);
  switch (m) {
    case 2:
      if (n % 2 == 0) return make_base(CanonicalKind::AllOnes, n, 2);
      return nullptr;
    case 3:
      return recipe_mod3(n);
    case 4:
      if (n == 2) return f2();
      if (n % 4 == 0) return make_base(CanonicalKind::AllOnes, n, 4);
      return nullptr;
    case 5:
      return recipe_mod5(n);
    case 6:
      if (n % 6 == 0) return make_base(CanonicalKind::AllOnes, n, 6);
      if (n % 6 == 4) return make_base(CanonicalKind::JMinusTwoI, n, 6);
      if (n % 6 == 2) {
        auto half = recipe_mod3(n / 2);
        if (!half) return nullptr;
        return make_kron(f2(), std::move(half), 6);
      }
      return nullptr;
    default:
      return nullptr;
  }
}

}  // namespace

bool is_supported_modulus(std::int64_t m) noexcept { return m >= 2 && m <= 6; }

Certificate decide(std::int64_t n, std::int64_t m) {
  if (!is_supported_modulus(m))
    throw Error(ErrorCode::UnsupportedModulus, "unsupported modulus " + std::to_string(m) + " (expected 2..6)");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "order must be >= 1");
  if (n >= 3) {
    auto o = parity_obstruction(n, m);
    if (!o) o = quadratic_obstruction(n, m);
    if (!o && m % 2 == 1) o = counting_obstruction(n, m);
    if (o) return Certificate{n, m, std::move(*o)};
  }
  auto recipe = recipe_for(n, m);
  if (!recipe)
    throw Error(ErrorCode::Internal,
                "no recipe and no obstruction for MH(" + std::to_string(n) + "," + std::to_string(m) + ")");
  return Certificate{n, m, std::move(recipe)};
}

// ---------------------------------------------------------------------------
// Materialization
// ---------------------------------------------------------------------------

namespace {

std::string mh_name(std::int64_t n, std::int64_t m) {
  return "MH(" + std::to_string(n) + "," + std::to_string(m) + ")";
}

SignMatrix materialize_node(const Recipe& recipe, const std::string& path);

ModularDesign materialize_source(const DesignSource& source, std::int64_t m, const std::string& path) {
  try {
    return std::visit(
        Overloaded{
            [m](const DesignSource::Catalog& c) { return catalog(c.name, m); },
            [m, &path](const DesignSource::CoreOf& c) {
              if (c.recipe->modulus != m)
                throw MaterializationError(path, "core source claims modulus " + std::to_string(c.recipe->modulus) +
                                                     ", expected " + std::to_string(m));
              const SignMatrix h = normalize(materialize_node(*c.recipe, path + "/core"));
              return core_to_design(h, m);
            },
            [m, &path](const DesignSource::Complement& c) {
              return complement(materialize_source(*c.of, m, path + "/complement"));
            },
            [m](const DesignSource::ExampleBlock26&) { return example_block_26(catalog(CatalogName::R13, m)); },
        },
        source.source);
  } catch (const MaterializationError&) {
    throw;
  } catch (const Error& e) {
    throw MaterializationError(path, e.what());
  }
}

SignMatrix build_node(const Recipe& recipe, const std::string& path) {
  return std::visit(
      Overloaded{
          [&](const Recipe::Base& b) { return canonical(b.kind, static_cast<std::size_t>(recipe.order)); },
          [&](const Recipe::Kron& k) {
            const auto combined =
                combined_modulus(Modulus(k.left->modulus), k.left->order, Modulus(k.right->modulus), k.right->order);
            if (recipe.modulus != 0 ? combined % recipe.modulus != 0 : combined != 0)
              throw MaterializationError(path, "Kronecker factors only guarantee modulus " + std::to_string(combined) +
                                                   ", node claims " + std::to_string(recipe.modulus));
            return kronecker(materialize_node(*k.left, path + "/kron.left"),
                             materialize_node(*k.right, path + "/kron.right"));
          },
          [&](const Recipe::TwoDesign& t) {
            return two_design_hadamard(materialize_source(*t.design, recipe.modulus, path + "/two_design"));
          },
          [&](const Recipe::DirectSum& d) {
            return direct_sum_hadamard(materialize_source(*d.first, recipe.modulus, path + "/direct_sum.first"),
                                       materialize_source(*d.second, recipe.modulus, path + "/direct_sum.second"));
          },
      },
      recipe.node);
}

SignMatrix materialize_node(const Recipe& recipe, const std::string& path) {
  SignMatrix h = [&] {
    try {
      return build_node(recipe, path);
    } catch (const MaterializationError&) {
      throw;
    } catch (const Error& e) {
      throw MaterializationError(path, e.what());
    }
  }();
  if (static_cast<std::int64_t>(h.order()) != recipe.order)
    throw MaterializationError(path, "built order " + std::to_string(h.order()) + ", recipe claims " +
                                         std::to_string(recipe.order));
  if (auto bad = first_violation(h, Modulus(recipe.modulus))) {
    throw MaterializationError(path, "not an " + mh_name(recipe.order, recipe.modulus) + ": rows " +
                                         std::to_string(bad->row_a) + " and " + std::to_string(bad->row_b) +
                                         " have inner product " + std::to_string(bad->dot));
  }
  return h;
}

}  // namespace

SignMatrix materialize(const Recipe& recipe, std::int64_t m) {
  SignMatrix h = materialize_node(recipe, "root");
  if (recipe.modulus != m && !is_modular_hadamard(h, Modulus(m)))
    throw MaterializationError("root", "result is not an " + mh_name(recipe.order, m));
  return h;
}

ModularDesign materialize_design(const DesignSource& source, std::int64_t m) {
  return materialize_source(source, m, "design");
}

bool check_certificate(const Certificate& certificate) {
  if (certificate.exists()) {
    const auto& recipe = certificate.recipe();
    if (recipe.order != certificate.n) return false;
    try {
      (void)materialize(recipe, certificate.m);
      return true;
    } catch (const Error&) {
      return false;
    }
  }
  const auto& o = certificate.obstruction();
  return o.n == certificate.n && o.m == certificate.m && obstruction_holds(o);
}

// ---------------------------------------------------------------------------
// Explanation
// ---------------------------------------------------------------------------

namespace {

void explain_recipe(std::ostream& os, const Recipe& recipe, int indent);

std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 2, ' '); }

void explain_source(std::ostream& os, const DesignSource& source, std::int64_t m, int indent) {
  const auto params = design_params(source, m).to_string();
  std::visit(Overloaded{
                 [&](const DesignSource::Catalog& c) {
                   os << pad(indent) << "catalog " << to_string(c.name);
                   if (auto e = catalog_exact_params(c.name))
                     os << " (" << e->v << ',' << e->k << ',' << e->lambda << ") design, as " << params;
                   else
                     os << ' ' << params << " design";
                   os << '\n';
                 },
                 [&](const DesignSource::CoreOf& c) {
                   os << pad(indent) << "core design (C+J)/2 of normalized " << mh_name(c.recipe->order, m) << " -> "
                      << params << '\n';
                   explain_recipe(os, *c.recipe, indent + 1);
                 },
                 [&](const DesignSource::Complement& c) {
                   os << pad(indent) << "complement J-D -> " << params << '\n';
                   explain_source(os, *c.of, m, indent + 1);
                 },
                 [&](const DesignSource::ExampleBlock26&) {
                   os << pad(indent) << "block design [[R, J-I], [J-I, J-R^T]] from R13 (13,4,1) -> " << params
                      << '\n';
                 },
             },
             source.source);
}

void explain_recipe(std::ostream& os, const Recipe& recipe, int indent) {
  const auto name = mh_name(recipe.order, recipe.modulus);
  std::visit(Overloaded{
                 [&](const Recipe::Base& b) {
                   os << pad(indent) << to_string(b.kind);
                   switch (b.kind) {
                     case CanonicalKind::AllOnes:
                     case CanonicalKind::JMinusTwoI: os << " of order " << recipe.order; break;
                     case CanonicalKind::F1: os << " = [1]"; break;
                     case CanonicalKind::F2: os << " = [[1,1],[1,-1]]"; break;
                     case CanonicalKind::H12: os << " (Paley, quadratic residues mod 11)"; break;
                   }
                   os << " -> " << name << '\n';
                 },
                 [&](const Recipe::Kron& k) {
                   os << pad(indent) << "Kronecker product -> " << name << '\n';
                   explain_recipe(os, *k.left, indent + 1);
                   explain_recipe(os, *k.right, indent + 1);
                 },
                 [&](const Recipe::TwoDesign& t) {
                   os << pad(indent) << "2D-J lifting -> " << name << '\n';
                   explain_source(os, *t.design, recipe.modulus, indent + 1);
                 },
                 [&](const Recipe::DirectSum& d) {
                   os << pad(indent) << "direct sum 2(D1 (+) D2)-J -> " << name << '\n';
                   explain_source(os, *d.first, recipe.modulus, indent + 1);
                   explain_source(os, *d.second, recipe.modulus, indent + 1);
                 },
             },
             recipe.node);
}

std::string join(const std::vector<std::int64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

}  // namespace

std::string explain(const Certificate& certificate) {
  std::ostringstream os;
  const auto name = mh_name(certificate.n, certificate.m);
  if (certificate.exists()) {
    os << name << ": exists\n";
    os << "recipe:\n";
    explain_recipe(os, certificate.recipe(), 1);
    return os.str();
  }
  const auto& o = certificate.obstruction();
  os << name << ": does not exist\n";
  os << "obstruction: " << to_string(o.kind) << '\n';
  switch (o.kind) {
    case ObstructionKind::CountingBound:
      os << "  r = " << o.r << " satisfies r == 2^(phi(" << o.m << ")-2) * " << o.n << " (mod " << o.m
         << "), so the order must be at least 4r = " << o.bound << ", but n = " << o.n << '\n';
      break;
    case ObstructionKind::QuadraticNonResidue:
      os << "  n = " << o.n << " is odd and coprime to " << o.m << ", but " << o.n << " mod " << o.m << " = "
         << o.residue << " is not in the squares {" << join(o.squares) << "}\n";
      break;
    case ObstructionKind::EvenModulusParity:
      os << "  m = " << o.m << " is even, so n must be even, but n = " << o.n << '\n';
      break;
    case ObstructionKind::DoublyEvenParity:
      os << "  m = " << o.m << " is divisible by 4, so n must be too, but n = " << o.n << " == " << o.residue
         << " (mod 4)\n";
      break;
  }
  return os.str();
}

}  // namespace mhad
