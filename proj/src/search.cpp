#include "mhad/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "mhad/error.hpp"
#include "mhad/solver.hpp"

namespace mhad {

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::FirstWitness: return "first";
    case SearchMode::CountAll: return "count";
    case SearchMode::ConfirmNone: return "none";
  }
  return "?";
}

std::optional<SearchMode> search_mode_from_string(const std::string& text) {
  for (auto mode : {SearchMode::FirstWitness, SearchMode::CountAll, SearchMode::ConfirmNone})
    if (to_string(mode) == text) return mode;
  return std::nullopt;
}

std::uint64_t candidate_count(int n) {
  const int free = (n - 1) * (n - 1);
  if (n < 1 || free > kMaxFreeCells)
    throw Error(ErrorCode::SpaceTooLarge, "search space 2^" + std::to_string(free) + " exceeds 2^" +
                                              std::to_string(kMaxFreeCells));
  return std::uint64_t{1} << free;
}

int effective_shard_bits(const SearchSpec& spec) {
  const int width = spec.n - 1;
  const int bits = spec.shard_bits < 0 ? std::min(width, 6) : spec.shard_bits;
  if (bits > width)
    throw Error(ErrorCode::InvalidShard, "shard bits " + std::to_string(bits) + " exceed the first row width " +
                                             std::to_string(width));
  return bits;
}

namespace {

constexpr int kMaxWidth = 6;

struct ShardResult {
  std::uint64_t examined = 0;
  std::uint64_t solutions = 0;
  std::optional<std::array<std::uint32_t, kMaxWidth + 1>> witness;  // free-row masks, index 1..width
};

class ShardEnumerator {
public:
  ShardEnumerator(int n, Modulus m, bool stop_at_first, bool prefix_rejection)
      : width_(n - 1), stop_at_first_(stop_at_first), prefix_rejection_(prefix_rejection) {
    for (int pc = 0; pc <= width_; ++pc) ok_[static_cast<std::size_t>(pc)] = m.reduce(n - 2 * pc) == 0;
  }

  ShardResult run(std::uint32_t row1_begin, std::uint32_t row1_end) {
    result_ = ShardResult{};
    if (width_ == 0) {
      // The only candidate is [1].
      result_.examined = 1;
      result_.solutions = 1;
      result_.witness.emplace();
      return result_;
    }
    if (prefix_rejection_) {
      descend(1, row1_begin, row1_end);
    } else {
      descend_all(1, row1_begin, row1_end);
    }
    return result_;
  }

private:
  // Returns true when the enumeration should stop.
  bool descend(int depth, std::uint32_t begin, std::uint32_t end) {
    const int remaining_rows = width_ - depth;
    const std::uint64_t subtree = std::uint64_t{1} << (remaining_rows * width_);
    for (std::uint32_t mask = begin; mask < end; ++mask) {
      bool ok = ok_[static_cast<std::size_t>(std::popcount(mask))];
      for (int e = 1; ok && e < depth; ++e) ok = ok_[static_cast<std::size_t>(std::popcount(mask ^ rows_[static_cast<std::size_t>(e)]))];
      if (!ok) {
        // Every completion of this prefix already fails.
        result_.examined += subtree;
        continue;
      }
      rows_[static_cast<std::size_t>(depth)] = mask;
      if (remaining_rows == 0) {
        ++result_.examined;
        ++result_.solutions;
        if (!result_.witness) result_.witness = rows_;
        if (stop_at_first_) return true;
      } else if (descend(depth + 1, 0, std::uint32_t{1} << width_)) {
        return true;
      }
    }
    return false;
  }

  bool row_ok(std::uint32_t mask) const noexcept { return ok_[static_cast<std::size_t>(std::popcount(mask))]; }

  // Every row against the all-ones first row and against every other row.
  bool full_check() const noexcept {
    for (int a = 1; a <= width_; ++a) {
      if (!row_ok(rows_[static_cast<std::size_t>(a)])) return false;
      for (int b = 1; b < a; ++b)
        if (!row_ok(rows_[static_cast<std::size_t>(a)] ^ rows_[static_cast<std::size_t>(b)])) return false;
    }
    return true;
  }

  bool descend_all(int depth, std::uint32_t begin, std::uint32_t end) {
    for (std::uint32_t mask = begin; mask < end; ++mask) {
      rows_[static_cast<std::size_t>(depth)] = mask;
      if (depth < width_) {
        if (descend_all(depth + 1, 0, std::uint32_t{1} << width_)) return true;
        continue;
      }
      ++result_.examined;
      if (!full_check()) continue;
      ++result_.solutions;
      if (!result_.witness) result_.witness = rows_;
      if (stop_at_first_) return true;
    }
    return false;
  }

  int width_;
  bool stop_at_first_;
  bool prefix_rejection_;
  std::array<bool, kMaxWidth + 1> ok_{};
  std::array<std::uint32_t, kMaxWidth + 1> rows_{};
  ShardResult result_;
};

SignMatrix witness_matrix(int n, const std::array<std::uint32_t, kMaxWidth + 1>& rows) {
  SignMatrix h(static_cast<std::size_t>(n));
  const int width = n - 1;
  for (int r = 1; r <= width; ++r)
    for (int c = 1; c <= width; ++c)
      if ((rows[static_cast<std::size_t>(r)] >> (width - c)) & 1u) h.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c), -1);
  return h;
}

std::string ledger_header(const SearchSpec& spec, int bits) {
  std::ostringstream os;
  os << "# mhad-search n=" << spec.n << " m=" << spec.m.value() << " mode=" << to_string(spec.mode)
     << " shard-bits=" << bits << (spec.prefix_rejection ? "" : " full-check");
  return os.str();
}

// Completed shards recorded in an existing ledger (examined, solutions).
std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> read_ledger(const std::filesystem::path& path,
                                                                             const std::string& header,
                                                                             std::uint64_t shard_count) {
  std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line != header)
        throw Error(ErrorCode::InvalidShard, "ledger " + path.string() + " was written for a different search: " + line);
      continue;
    }
    std::istringstream fields(line);
    std::string tag;
    std::uint64_t index = 0, examined = 0, solutions = 0;
    if (!(fields >> tag >> index >> examined >> solutions) || tag != "SHARD" || index >= shard_count)
      throw Error(ErrorCode::InvalidShard, "ledger " + path.string() + " line " + std::to_string(line_no) + " is malformed");
    done[index] = {examined, solutions};
  }
  return done;
}

}  // namespace

SearchOutcome exhaustive(const SearchSpec& spec) {
  if (spec.n < 1) throw Error(ErrorCode::InvalidArgument, "search order must be >= 1");
  const std::uint64_t total = candidate_count(spec.n);
  const int width = spec.n - 1;
  const int bits = effective_shard_bits(spec);
  const std::uint64_t shard_count = std::uint64_t{1} << bits;
  if (spec.shard && *spec.shard >= shard_count)
    throw Error(ErrorCode::InvalidShard, "shard index " + std::to_string(*spec.shard) + " out of range [0, " +
                                             std::to_string(shard_count) + ")");

  std::vector<std::uint64_t> todo;
  if (spec.shard) {
    todo.push_back(*spec.shard);
  } else {
    for (std::uint64_t s = 0; s < shard_count; ++s) todo.push_back(s);
  }

  const std::string header = ledger_header(spec, bits);
  std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> resumed;
  std::ofstream ledger;
  if (spec.ledger) {
    const bool fresh = !std::filesystem::exists(*spec.ledger);
    resumed = read_ledger(*spec.ledger, header, shard_count);
    ledger.open(*spec.ledger, std::ios::app);
    if (!ledger) throw Error(ErrorCode::InvalidArgument, "cannot open ledger " + spec.ledger->string());
    if (fresh) ledger << header << '\n' << std::flush;
  }

  std::vector<std::optional<ShardResult>> results(todo.size());
  std::vector<bool> from_ledger(todo.size(), false);
  for (std::size_t i = 0; i < todo.size(); ++i) {
    auto it = resumed.find(todo[i]);
    // Shards with solutions are re-run so their witness can be recovered.
    if (it != resumed.end() && it->second.second == 0) {
      results[i] = ShardResult{it->second.first, 0, std::nullopt};
      from_ledger[i] = true;
    }
  }

  const bool first_only = spec.mode == SearchMode::FirstWitness;
  const std::uint64_t row1_span = std::uint64_t{1} << (width - bits);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{todo.size()};
  std::mutex ledger_mutex;

  auto worker = [&] {
    ShardEnumerator enumerator(spec.n, spec.m, first_only, spec.prefix_rejection);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= todo.size()) return;
      if (first_only && i > best.load()) continue;
      if (results[i]) continue;
      const auto begin = static_cast<std::uint32_t>(todo[i] * row1_span);
      const auto end = static_cast<std::uint32_t>((todo[i] + 1) * row1_span);
      ShardResult r = enumerator.run(begin, end);
      if (r.solutions > 0) {
        std::size_t current = best.load();
        while (i < current && !best.compare_exchange_weak(current, i)) {
        }
      }
      if (ledger.is_open()) {
        std::lock_guard lock(ledger_mutex);
        ledger << "SHARD " << todo[i] << ' ' << r.examined << ' ' << r.solutions << '\n' << std::flush;
      }
      results[i] = std::move(r);
    }
  };

  const unsigned threads = std::max(1u, spec.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SearchOutcome outcome;
  for (std::size_t i = 0; i < todo.size(); ++i) {
    if (!results[i]) break;  // only shards past the first witness are skipped
    const auto& r = *results[i];
    outcome.examined += r.examined;
    if (from_ledger[i]) {
      ++outcome.shards_resumed;
    } else {
      ++outcome.shards_run;
    }
    if (r.solutions > 0 && !outcome.witness) outcome.witness = witness_matrix(spec.n, *r.witness);
    outcome.solutions += r.solutions;
    if (first_only && r.solutions > 0) break;
  }

  if (outcome.witness && !is_modular_hadamard(*outcome.witness, spec.m))
    throw Error(ErrorCode::Internal, "search produced a witness that fails the Gram check");
  if (!first_only && !spec.shard && outcome.examined != total)
    throw Error(ErrorCode::Internal, "search accounted for " + std::to_string(outcome.examined) + " of " +
                                         std::to_string(total) + " candidates");
  return outcome;
}

std::size_t CrossCheckReport::disagreements() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.agrees(); }));
}

CrossCheckReport cross_check(int n_max, const std::vector<int>& moduli, unsigned threads) {
  if (n_max < 1 || n_max > 6) throw Error(ErrorCode::InvalidArgument, "cross_check needs 1 <= n_max <= 6");
  CrossCheckReport report;
  for (int n = 1; n <= n_max; ++n) {
    for (int m : moduli) {
      SearchSpec spec;
      spec.n = n;
      spec.m = Modulus(m);
      spec.mode = SearchMode::FirstWitness;
      spec.threads = threads;
      const auto outcome = exhaustive(spec);
      report.entries.push_back({n, m, decide(n, m).exists(), outcome.witness.has_value(), outcome.examined});
    }
  }
  return report;
}

}  // namespace mhad
