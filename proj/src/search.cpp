#include "regseq/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace regseq {

std::string_view prune_rule_name(PruneRule rule) noexcept {
  switch (rule) {
    case PruneRule::drop_jump0:
      return "drop_jump0";
    case PruneRule::drop_jump1:
      return "drop_jump1";
    case PruneRule::drop_plain_input_get:
      return "drop_plain_input_get";
    case PruneRule::canonical_overshoot:
      return "canonical_overshoot";
    case PruneRule::frontier_memo:
      return "frontier_memo";
  }
  return "?";
}

std::optional<PruneRule> prune_rule_from_name(std::string_view name) noexcept {
  for (auto r : kAllPruneRules)
    if (prune_rule_name(r) == name) return r;
  return std::nullopt;
}

PruneRules PruneRules::all() {
  PruneRules p;
  for (auto r : kAllPruneRules) p.insert(r);
  return p;
}

PruneRules PruneRules::parse(std::string_view list) {
  PruneRules p;
  if (list.empty() || list == "none") return p;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    std::string_view name = list.substr(start, comma - start);
    if (name == "all") {
      p = all();
    } else {
      auto rule = prune_rule_from_name(name);
      if (!rule) throw std::invalid_argument("unknown prune rule '" + std::string(name) + "'");
      p.insert(*rule);
    }
    start = comma + 1;
  }
  return p;
}

std::vector<PruneRule> PruneRules::list() const {
  std::vector<PruneRule> out;
  for (auto r : kAllPruneRules)
    if (has(r)) out.push_back(r);
  return out;
}

SearchAborted::SearchAborted(std::uint64_t budget)
    : std::runtime_error("search aborted: step budget of " + std::to_string(budget) + " exhausted") {}

// ---------------------------------------------------------------------------
// Search spaces and shards

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
    throw std::length_error("search space size overflows 64 bits");
  return a * b;
}

}  // namespace

std::uint64_t SearchSpace::candidates_from(std::size_t depth) const {
  std::uint64_t total = 1;
  for (std::size_t p = depth; p < positions.size(); ++p) total = checked_mul(total, positions[p].size());
  return total;
}

std::uint64_t SearchSpace::candidates() const { return candidates_from(0); }

SearchSpace make_search_space(Alphabet alphabet, std::size_t length, const PruneRules& pruning) {
  if (length == 0) throw std::invalid_argument("search length must be >= 1");
  if (alphabet.symbols.size() > std::numeric_limits<std::uint16_t>::max())
    throw std::length_error("alphabet too large");
  SearchSpace space{std::move(alphabet), length, {}};
  space.positions.resize(length);
  for (std::size_t p = 1; p <= length; ++p) {
    auto& allowed = space.positions[p - 1];
    for (std::size_t s = 0; s < space.alphabet.symbols.size(); ++s) {
      const Instruction& sym = space.alphabet.symbols[s];
      if (pruning.has(PruneRule::canonical_overshoot) && sym.kind() == InstrKind::jump &&
          sym.offset() > length - p + 1)
        continue;
      allowed.push_back(static_cast<std::uint16_t>(s));
    }
  }
  return space;
}

SearchSpace make_search_space(const SearchConstraints& c, std::size_t length) {
  AlphabetFlags flags;
  flags.allow_neg = c.allow_neg;
  flags.allow_aux_set = c.allow_aux_set;
  flags.allow_jump0 = !c.pruning.has(PruneRule::drop_jump0);
  flags.allow_jump1 = !c.pruning.has(PruneRule::drop_jump1);
  flags.allow_plain_input_get = !c.pruning.has(PruneRule::drop_plain_input_get);
  return make_search_space(build_alphabet(c.n_inputs, c.k_aux, static_cast<std::uint32_t>(length), flags),
                           length, c.pruning);
}

std::vector<Shard> partition(const SearchSpace& space, std::size_t shard_count) {
  if (shard_count == 0) throw std::invalid_argument("shard_count must be >= 1");
  if (shard_count == 1) return {Shard{0, 0, 1}};
  std::size_t depth = 0;
  std::uint64_t prefixes = 1;
  while (depth < space.length && prefixes < shard_count)
    prefixes = checked_mul(prefixes, space.positions[depth++].size());
  const std::uint64_t count = std::min<std::uint64_t>(shard_count, prefixes);
  std::vector<Shard> shards;
  shards.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    // Balanced contiguous split of [0, prefixes).
    const std::uint64_t begin = prefixes / count * i + std::min(i, prefixes % count);
    const std::uint64_t end = prefixes / count * (i + 1) + std::min(i + 1, prefixes % count);
    shards.push_back({depth, begin, end});
  }
  return shards;
}

std::vector<Shard> partition(std::size_t length, const Alphabet& alphabet, std::size_t shard_count) {
  return partition(make_search_space(alphabet, length, {}), shard_count);
}

// ---------------------------------------------------------------------------
// Enumeration engine

namespace {

constexpr std::uint32_t kResolvedGood = 0;
constexpr std::uint32_t kResolvedBad = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint64_t kStepFlush = std::uint64_t{1} << 22;
constexpr std::size_t kMaxSearchArity = 6;
constexpr std::size_t kMaxSearchAux = 31;

struct SymbolCode {
  enum class Op : std::uint8_t { basic, jump, halt, invalid };
  Op op = Op::halt;
  InstrKind mode = InstrKind::plain;
  Command command = Command::get;
  bool is_input = false;
  std::uint8_t bit = 0;
  std::uint32_t offset = 0;
};

struct Exec {
  std::uint32_t pc;    // pending position, or one of the resolved markers
  std::uint32_t regs;  // bit 0: out, bit j: aux:j
};

/// Shared by all workers; only the step counter and cancel flag mutate.
struct Problem {
  const SearchSpace& space;
  std::size_t length;
  std::size_t rows;
  std::vector<std::uint8_t> expected;
  std::vector<SymbolCode> codes;
  std::vector<std::uint16_t> min_symbol;  // per position, first in alphabet order
  std::vector<std::uint64_t> suffix;      // candidates over positions depth..L-1
  std::vector<bool> halt_allowed;         // per position
  std::uint16_t halt_symbol = 0;
  bool frontier;
  std::uint64_t budget;
  std::atomic<std::uint64_t> steps{0};
  std::atomic<bool> cancelled{false};

  Problem(const TruthTable& target, const SearchSpace& s, std::uint32_t env_aux, bool frontier_memo,
          std::uint64_t step_budget)
      : space(s),
        length(s.length),
        rows(target.rows()),
        frontier(frontier_memo),
        budget(step_budget) {
    expected.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) expected[r] = target[r] ? 1 : 0;

    const auto& symbols = s.alphabet.symbols;
    codes.resize(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      const Instruction& sym = symbols[i];
      SymbolCode& c = codes[i];
      c.mode = sym.kind();
      switch (sym.kind()) {
        case InstrKind::halt:
          c.op = SymbolCode::Op::halt;
          break;
        case InstrKind::jump:
          c.op = SymbolCode::Op::jump;
          c.offset = sym.offset();
          break;
        default: {
          const auto& reg = sym.basic().reg;
          c.op = SymbolCode::Op::basic;
          c.command = sym.basic().command;
          if (reg.kind == RegisterKind::input) {
            c.is_input = true;
            if (reg.index > target.arity()) c.op = SymbolCode::Op::invalid;
            else c.bit = static_cast<std::uint8_t>(reg.index - 1);
          } else if (reg.kind == RegisterKind::auxiliary) {
            if (reg.index > env_aux) c.op = SymbolCode::Op::invalid;
            else c.bit = static_cast<std::uint8_t>(reg.index);
          }
          break;
        }
      }
    }

    min_symbol.resize(length);
    suffix.resize(length + 1);
    for (std::size_t p = 0; p < length; ++p) {
      if (s.positions[p].empty()) throw std::invalid_argument("empty search position");
      min_symbol[p] = *std::min_element(s.positions[p].begin(), s.positions[p].end());
    }
    for (std::size_t d = 0; d <= length; ++d) suffix[d] = s.candidates_from(d);
    halt_allowed.assign(length, false);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (symbols[i].kind() != InstrKind::halt) continue;
      halt_symbol = static_cast<std::uint16_t>(i);
      for (std::size_t p = 0; p < length; ++p)
        for (auto a : s.positions[p])
          if (a == i) halt_allowed[p] = true;
    }
  }
};

struct Cancelled {};

struct ShardResult {
  std::uint64_t evaluated = 0;
  std::uint64_t computing = 0;
  std::uint64_t steps = 0;
  std::optional<std::vector<std::uint16_t>> best;
};

class Enumerator {
 public:
  explicit Enumerator(Problem& problem)
      : pb_(problem),
        L_(problem.length),
        rows_(problem.rows),
        states_((L_ + 1) * rows_),
        pending_(L_ + 1),
        bad_(L_ + 1),
        cur_(L_),
        candidate_(L_) {
    for (std::size_t r = 0; r < rows_; ++r) states_[r] = {1, 0};
    pending_[0] = static_cast<std::uint32_t>(rows_);
    bad_[0] = 0;
  }

  ShardResult run(const Shard& shard) {
    result_ = {};
    flushed_ = 0;
    const std::size_t d = shard.prefix_depth;
    for (std::uint64_t index = shard.begin; index < shard.end; ++index) {
      std::uint64_t rest = index;
      for (std::size_t p = d; p-- > 0;) {
        const auto& allowed = pb_.space.positions[p];
        cur_[p] = allowed[rest % allowed.size()];
        rest /= allowed.size();
      }
      // Replays the prefix with the same frontier checks as dfs, so counts do
      // not depend on where the shard boundary falls.
      bool resolved = false;
      for (std::size_t p = 0; p < d && !resolved; ++p) {
        apply(p, cur_[p]);
        if (pb_.frontier && p + 1 < L_) {
          if (bad_[p + 1] > 0) {
            resolved = true;
          } else if (pending_[p + 1] == 0) {
            settle(p + 1, pb_.suffix[d]);
            resolved = true;
          }
        }
      }
      if (!resolved) dfs(d);
    }
    flush();
    return result_;
  }

 private:
  void apply(std::size_t depth, std::uint16_t symbol) {
    const Exec* src = &states_[depth * rows_];
    Exec* dst = &states_[(depth + 1) * rows_];
    std::copy(src, src + rows_, dst);
    std::uint32_t pending = pending_[depth];
    std::uint32_t bad = bad_[depth];
    const auto pos = static_cast<std::uint32_t>(depth + 1);
    const auto len = static_cast<std::uint32_t>(L_);
    const SymbolCode& c = pb_.codes[symbol];

    for (std::size_t r = 0; r < rows_; ++r) {
      Exec& e = dst[r];
      if (e.pc != pos) continue;
      ++result_.steps;
      std::uint32_t advance = 0;  // 0 = inaction or invalid access
      switch (c.op) {
        case SymbolCode::Op::halt:
          --pending;
          if ((e.regs & 1U) == pb_.expected[r]) {
            e.pc = kResolvedGood;
          } else {
            e.pc = kResolvedBad;
            ++bad;
          }
          continue;
        case SymbolCode::Op::invalid:
          break;
        case SymbolCode::Op::jump:
          if (c.offset != 0 && c.offset <= len - pos) advance = c.offset;
          break;
        case SymbolCode::Op::basic: {
          bool reply;
          if (c.is_input) {
            reply = ((r >> c.bit) & 1U) != 0;
          } else {
            const std::uint32_t mask = 1U << c.bit;
            switch (c.command) {
              case Command::get:
                reply = (e.regs & mask) != 0;
                break;
              case Command::set_false:
                e.regs &= ~mask;
                reply = false;
                break;
              case Command::set_true:
                e.regs |= mask;
                reply = true;
                break;
              default:
                e.regs ^= mask;
                reply = (e.regs & mask) != 0;
                break;
            }
          }
          const bool proceed = c.mode == InstrKind::plain || (c.mode == InstrKind::pos_test) == reply;
          advance = proceed ? 1 : 2;
          if (advance > len - pos) advance = 0;
          break;
        }
      }
      if (advance == 0) {
        --pending;
        ++bad;
        e.pc = kResolvedBad;
      } else {
        e.pc = pos + advance;
      }
    }
    pending_[depth + 1] = pending;
    bad_[depth + 1] = bad;
    if (result_.steps - flushed_ >= kStepFlush) flush();
  }

  void dfs(std::size_t depth) {
    if (depth + 1 == L_) {
      last_position();
      return;
    }
    if (depth == L_) {
      ++result_.evaluated;
      if (bad_[L_] == 0) {
        ++result_.computing;
        consider(cur_);
      }
      return;
    }
    for (std::uint16_t symbol : pb_.space.positions[depth]) {
      cur_[depth] = symbol;
      apply(depth, symbol);
      if (pb_.frontier && depth + 1 < L_) {
        if (bad_[depth + 1] > 0) continue;
        if (pending_[depth + 1] == 0) {
          settle(depth + 1, pb_.suffix[depth + 1]);
          continue;
        }
      }
      dfs(depth + 1);
    }
  }

  /// Evaluates every choice of the final instruction at once. Executions still
  /// pending all sit at position L; any instruction there other than `!` runs
  /// past the end (or is an invalid access), so only `!` can succeed.
  void last_position() {
    const std::size_t depth = L_ - 1;
    const auto& allowed = pb_.space.positions[depth];
    const std::uint32_t pending = pending_[depth];
    result_.evaluated += allowed.size();
    result_.steps += std::uint64_t{pending} * allowed.size();
    if (result_.steps - flushed_ >= kStepFlush) flush();
    if (bad_[depth] > 0) return;
    if (pending == 0) {
      result_.computing += allowed.size();
      cur_[depth] = pb_.min_symbol[depth];
      consider(cur_);
      return;
    }
    if (!pb_.halt_allowed[depth]) return;
    const Exec* st = &states_[depth * rows_];
    for (std::size_t r = 0; r < rows_; ++r)
      if (st[r].pc == L_ && (st[r].regs & 1U) != pb_.expected[r]) return;
    ++result_.computing;
    cur_[depth] = pb_.halt_symbol;
    consider(cur_);
  }

  /// Every completion of cur_[0..depth) computes the target; `count` of them
  /// belong to this shard.
  void settle(std::size_t depth, std::uint64_t count) {
    result_.computing += count;
    for (std::size_t p = 0; p < L_; ++p) candidate_[p] = p < depth ? cur_[p] : pb_.min_symbol[p];
    consider(candidate_);
  }

  void consider(const std::vector<std::uint16_t>& seq) {
    if (result_.best && !(seq < *result_.best)) return;
    result_.best = seq;
  }

  void flush() {
    const std::uint64_t delta = result_.steps - flushed_;
    flushed_ = result_.steps;
    const std::uint64_t total = pb_.steps.fetch_add(delta) + delta;
    if (total > pb_.budget) {
      pb_.cancelled = true;
      throw SearchAborted(pb_.budget);
    }
    if (pb_.cancelled) throw Cancelled{};
  }

  Problem& pb_;
  std::size_t L_;
  std::size_t rows_;
  std::vector<Exec> states_;
  std::vector<std::uint32_t> pending_;
  std::vector<std::uint32_t> bad_;
  std::vector<std::uint16_t> cur_;
  std::vector<std::uint16_t> candidate_;
  ShardResult result_;
  std::uint64_t flushed_ = 0;
};

}  // namespace

ExistsResult search_space(const TruthTable& target, const SearchSpace& space, std::uint32_t env_aux,
                          bool frontier_memo, const SearchOptions& options) {
  if (target.arity() > kMaxSearchArity)
    throw std::invalid_argument("search supports arity <= " + std::to_string(kMaxSearchArity));
  if (env_aux > kMaxSearchAux)
    throw std::invalid_argument("search supports at most " + std::to_string(kMaxSearchAux) +
                                " auxiliary registers");
  if (space.length == 0 || space.positions.size() != space.length)
    throw std::invalid_argument("malformed search space");

  Problem problem(target, space, env_aux, frontier_memo, options.step_budget);
  const unsigned workers = std::max(1U, options.workers);
  const std::size_t shard_count =
      workers == 1 ? 1 : std::size_t{workers} * std::max(1U, options.shards_per_worker);
  const std::vector<Shard> shards = partition(space, shard_count);
  std::vector<ShardResult> results(shards.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    Enumerator enumerator(problem);
    try {
      for (std::size_t i = next++; i < shards.size(); i = next++) results[i] = enumerator.run(shards[i]);
    } catch (const Cancelled&) {
    } catch (...) {
      problem.cancelled = true;
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, shards.size()));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  ExistsResult out;
  out.stats.length = space.length;
  out.stats.candidates = space.candidates();
  out.stats.alphabet_size = space.positions.front().size();
  std::optional<std::vector<std::uint16_t>> best;
  for (auto& r : results) {
    out.stats.evaluated += r.evaluated;
    out.stats.computing += r.computing;
    out.vm_steps += r.steps;
    if (r.best && (!best || *r.best < *best)) best = std::move(r.best);
  }
  out.stats.exists = out.stats.computing > 0;
  if (best) {
    std::vector<Instruction> items;
    items.reserve(best->size());
    for (auto s : *best) items.push_back(space.alphabet.symbols[s]);
    InstructionSequence seq(std::move(items));
    ComputeVerdict verdict = computes(seq, target);
    if (!is_computes(verdict))
      throw std::logic_error("search produced a witness that fails verification: " + render(seq) +
                             " (" + describe(verdict) + ")");
    out.witness = Witness{std::move(seq), std::move(verdict)};
  }
  return out;
}

ExistsResult exists_program(const TruthTable& target, std::size_t length, const SearchConstraints& c,
                            const SearchOptions& options) {
  if (target.arity() != c.n_inputs)
    throw std::invalid_argument("target arity does not match the constraint's input count");
  return search_space(target, make_search_space(c, length), c.k_aux,
                      c.pruning.has(PruneRule::frontier_memo), options);
}

MinimalityProfile minimal_length(const TruthTable& target, const SearchConstraints& c,
                                 const SearchOptions& options, std::string target_id) {
  if (c.max_len == 0) throw std::invalid_argument("max_len must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  MinimalityProfile profile{target, std::move(target_id), c, {}, std::nullopt, std::nullopt, 0,
                            std::max(1U, options.workers), 0};
  if (profile.target_id.empty()) profile.target_id = "table:" + target.bit_string();

  SearchOptions remaining = options;
  for (std::size_t len = 1; len <= c.max_len; ++len) {
    ExistsResult r;
    try {
      r = exists_program(target, len, c, remaining);
    } catch (const SearchAborted&) {
      throw SearchAborted(options.step_budget);
    }
    profile.vm_steps += r.vm_steps;
    remaining.step_budget = options.step_budget > profile.vm_steps ? options.step_budget - profile.vm_steps : 0;
    profile.lengths.push_back(r.stats);
    if (r.witness) {
      profile.minimal_length = len;
      profile.witness = std::move(r.witness->sequence);
      break;
    }
  }
  profile.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return profile;
}

}  // namespace regseq
