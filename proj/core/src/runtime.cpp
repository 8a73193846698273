#include "lamp/runtime.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "lamp/reduction.hpp"

namespace lamp {

std::vector<Term> program_components(const Sequent& program) {
  std::vector<Term> out;
  for (const auto& e : program.delta) {
    auto parts = flatten_par(e.term);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

bool same_components(std::vector<Term> a, std::vector<Term> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

namespace {

const char* state_name(CellState s) {
  switch (s) {
    case CellState::Empty: return "empty";
    case CellState::Filled: return "filled";
    case CellState::Consumed: return "consumed";
  }
  return "?";
}

// A transmission whose receiver lives in another worker.
struct RemoteSend {
  Path activator;
  std::string chan;
};

struct RemoteDist {
  Path activator;
  // Per channel: a local receiver path, or nullopt when the receiver is remote.
  std::optional<Path> rx;
  std::optional<Path> ry;
};

bool lca_is_par(const Term& root, const Path& a, const Path& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  return subterm_at(root, Path(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k))).is(TermKind::Par);
}

void scan_remote(const Term& root, const Term& t, Path& path, std::vector<RemoteSend>& sends,
                 std::vector<RemoteDist>& dists) {
  if (t.is(TermKind::App) && t.fun().is(TermKind::Send)) {
    const Term& s = t.fun();
    if (!occurs_free(s.body(), s.name()) && occurrences(root, s.name()).empty()) sends.push_back({path, s.name()});
  } else if (t.is(TermKind::Dist) && t.body().is(TermKind::Par)) {
    auto ox = occurrences(root, t.name());
    auto oy = occurrences(root, t.name2());
    bool fine = ox.size() <= 1 && oy.size() <= 1 && (ox.empty() || oy.empty());
    if (fine && !ox.empty()) fine = lca_is_par(root, ox[0], path);
    if (fine && !oy.empty()) fine = lca_is_par(root, oy[0], path);
    if (fine) {
      RemoteDist d{path, std::nullopt, std::nullopt};
      if (!ox.empty()) d.rx = ox[0];
      if (!oy.empty()) d.ry = oy[0];
      dists.push_back(std::move(d));
    }
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(static_cast<int>(i));
    scan_remote(root, t.child(i), path, sends, dists);
    path.pop_back();
  }
}

class Network {
 public:
  Network(std::vector<Term> comps, const RuntimeOptions& opts) : terms_(std::move(comps)), opts_(opts) {}

  std::variant<std::vector<Term>, DeadlockReport> run() {
    std::size_t n = terms_.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(opts_.seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<std::thread> threads;
    threads.reserve(n);
    for (std::size_t i : order) threads.emplace_back([this, i] { worker(i); });

    {
      std::unique_lock lk(m_);
      auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(opts_.timeout_ms);
      if (!cv_.wait_until(lk, deadline, [&] { return done_ || aborted_; })) {
        aborted_ = true;
        timed_out_ = true;
        cv_.notify_all();
      }
    }
    for (auto& t : threads) t.join();
    if (error_) std::rethrow_exception(error_);

    if (timed_out_ || stalled_) {
      DeadlockReport r;
      for (const auto& t : terms_) r.blocked.push_back(print_term(t));
      for (const auto& [name, c] : cells_) r.cells.push_back(c);
      return r;
    }
    std::vector<Term> out;
    for (const auto& t : terms_) {
      auto parts = flatten_par(t);
      out.insert(out.end(), parts.begin(), parts.end());
    }
    if (!find_redexes(join_par(out)).empty()) {
      throw InvariantViolation("concurrent run stopped at a term that still has a redex");
    }
    return out;
  }

 private:
  std::vector<Term> terms_;  // published state of each worker, guarded by m_
  RuntimeOptions opts_;
  std::mutex m_;
  std::condition_variable cv_;
  std::map<std::string, ChannelCell> cells_;
  std::size_t version_ = 0;
  std::size_t idle_ = 0;
  std::size_t unconsumed_ = 0;
  bool done_ = false;
  bool aborted_ = false;
  bool stalled_ = false;
  bool timed_out_ = false;
  std::exception_ptr error_;

  void fill(const std::string& x, const Term& v) {
    auto& c = cells_[x];
    c.name = x;
    if (c.state != CellState::Empty) throw InvariantViolation("channel " + x + " filled twice");
    c.state = CellState::Filled;
    c.value = v;
    ++unconsumed_;
    ++version_;
    idle_ = 0;  // every waiter wakes to look at the new cell
  }

  Term consume(const std::string& x) {
    auto it = cells_.find(x);
    if (it == cells_.end() || it->second.state != CellState::Filled) {
      throw InvariantViolation("channel " + x + " consumed while " +
                               (it == cells_.end() ? std::string("empty") : state_name(it->second.state)));
    }
    it->second.state = CellState::Consumed;
    --unconsumed_;
    return it->second.value;
  }

  void worker(std::size_t i) {
    std::mt19937_64 rng(opts_.seed * 0x9e3779b97f4a7c15ULL + i + 1);
    try {
      std::unique_lock lk(m_);
      Term t = terms_[i];
      lk.unlock();
      for (;;) {
        auto local = find_redexes(t);
        std::vector<RemoteSend> sends;
        std::vector<RemoteDist> dists;
        Path p;
        scan_remote(t, t, p, sends, dists);

        lk.lock();
        terms_[i] = t;
        if (aborted_ || done_) return;
        std::vector<std::string> ready;
        for (const auto& x : free_vars(t)) {
          auto it = cells_.find(x);
          if (it != cells_.end() && it->second.state == CellState::Filled) ready.push_back(x);
        }
        std::size_t total = local.size() + sends.size() + dists.size() + ready.size();
        if (total == 0) {
          if (++idle_ == terms_.size()) {
            stalled_ = unconsumed_ > 0;
            done_ = true;
            cv_.notify_all();
            return;
          }
          std::size_t seen = version_;
          cv_.wait(lk, [&] { return done_ || aborted_ || version_ != seen; });
          lk.unlock();
          continue;
        }

        std::size_t pick = rng() % total;
        if (pick < local.size()) {
          lk.unlock();
          t = contract(t, local[pick]);
        } else if ((pick -= local.size()) < sends.size()) {
          const auto& s = sends[pick];
          const Term& act = subterm_at(t, s.activator);
          fill(s.chan, act.arg());
          cv_.notify_all();
          lk.unlock();
          t = replace_at(t, s.activator, act.fun().body());
        } else if ((pick -= sends.size()) < dists.size()) {
          const auto& d = dists[pick];
          const Term& act = subterm_at(t, d.activator);
          if (!d.rx) fill(act.name(), act.body().left());
          if (!d.ry) fill(act.name2(), act.body().right());
          cv_.notify_all();
          lk.unlock();
          Term next = t;
          if (d.rx) next = replace_at(next, *d.rx, act.body().left());
          if (d.ry) next = replace_at(next, *d.ry, act.body().right());
          t = replace_at(next, d.activator, Term::unit());
        } else {
          const std::string& x = ready[pick - dists.size()];
          Term v = consume(x);
          lk.unlock();
          t = substitute(t, x, v);
        }
        if (rng() % 4 == 0) std::this_thread::yield();
      }
    } catch (...) {
      std::lock_guard g(m_);
      if (!error_) error_ = std::current_exception();
      aborted_ = true;
      cv_.notify_all();
    }
  }
};

}  // namespace

std::string describe(const DeadlockReport& r) {
  std::string out = "deadlock: " + std::to_string(r.blocked.size()) + " worker(s)\n";
  for (const auto& b : r.blocked) out += "  worker: " + b + "\n";
  for (const auto& c : r.cells) out += "  cell " + c.name + ": " + state_name(c.state) + "\n";
  return out;
}

std::variant<std::vector<Term>, DeadlockReport> run_concurrent(const Sequent& program, const RuntimeOptions& opts) {
  auto comps = program_components(program);
  if (comps.empty()) return std::vector<Term>{};
  return Network(std::move(comps), opts).run();
}

}  // namespace lamp
