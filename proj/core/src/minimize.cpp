#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "machine.hpp"
#include "tribab/dfao.hpp"

namespace tribab::detail {

Machine canonical_reachable(const Machine& m) {
  const std::size_t k = m.sig.symbol_count();
  constexpr State kUnseen = ~State{0};
  std::vector<State> id(m.states(), kUnseen);
  std::vector<State> order;
  order.reserve(m.states());
  id[m.initial] = 0;
  order.push_back(m.initial);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const State q = order[head];
    for (std::size_t a = 0; a < k; ++a) {
      const State t = m.delta[q * k + a];
      if (id[t] == kUnseen) {
        id[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }
  Machine out;
  out.sig = m.sig;
  out.initial = 0;
  out.label.resize(order.size());
  out.delta.resize(order.size() * k);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const State q = order[i];
    out.label[i] = m.label[q];
    for (std::size_t a = 0; a < k; ++a) out.delta[i * k + a] = id[m.delta[q * k + a]];
  }
  return out;
}

namespace {

// Hopcroft refinement on an accessible complete machine. Returns the block
// index of every state.
std::vector<State> hopcroft_blocks(const Machine& m) {
  const std::size_t n = m.states();
  const std::size_t k = m.sig.symbol_count();

  // Predecessor lists per symbol, CSR layout.
  std::vector<State> pred_off((n + 1) * k, 0);
  std::vector<State> preds(n * k);
  for (std::size_t a = 0; a < k; ++a) {
    State* off = pred_off.data() + a * (n + 1);
    for (std::size_t q = 0; q < n; ++q) ++off[m.delta[q * k + a] + 1];
    for (std::size_t q = 0; q < n; ++q) off[q + 1] += off[q];
  }
  {
    std::vector<State> fill(pred_off);
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t a = 0; a < k; ++a) {
        const State t = m.delta[q * k + a];
        preds[a * n + fill[a * (n + 1) + t]++] = static_cast<State>(q);
      }
    }
  }

  // Partition as a permutation of states; each block is a contiguous range.
  std::vector<State> elems(n);
  std::iota(elems.begin(), elems.end(), State{0});
  std::unordered_map<int, State> label_block;
  std::vector<State> block_of(n);
  for (std::size_t q = 0; q < n; ++q) {
    auto [it, inserted] = label_block.try_emplace(m.label[q], static_cast<State>(label_block.size()));
    block_of[q] = it->second;
  }
  std::stable_sort(elems.begin(), elems.end(),
                   [&](State x, State y) { return block_of[x] < block_of[y]; });
  std::vector<State> loc(n);
  std::vector<State> start, end;
  for (std::size_t i = 0; i < n; ++i) {
    const State q = elems[i];
    loc[q] = static_cast<State>(i);
    const State b = block_of[q];
    if (b >= start.size()) {
      start.push_back(static_cast<State>(i));
      end.push_back(static_cast<State>(i));
    }
    end[b] = static_cast<State>(i + 1);
  }

  std::vector<State> marked(start.size(), 0);
  std::vector<std::uint8_t> pending(start.size(), 1);
  std::vector<State> work(start.size());
  std::iota(work.begin(), work.end(), State{0});
  std::vector<State> touched;
  std::vector<State> splitter;

  while (!work.empty()) {
    const State b = work.back();
    work.pop_back();
    pending[b] = 0;
    splitter.assign(elems.begin() + start[b], elems.begin() + end[b]);

    for (std::size_t a = 0; a < k; ++a) {
      const State* off = pred_off.data() + a * (n + 1);
      const State* pa = preds.data() + a * n;
      for (State q : splitter) {
        for (State i = off[q]; i < off[q + 1]; ++i) {
          const State p = pa[i];
          const State y = block_of[p];
          if (marked[y] == 0) touched.push_back(y);
          const State pos = start[y] + marked[y];
          const State other = elems[pos];
          elems[pos] = p;
          elems[loc[p]] = other;
          loc[other] = loc[p];
          loc[p] = pos;
          ++marked[y];
        }
      }
      for (State y : touched) {
        const State size = end[y] - start[y];
        const State hit = marked[y];
        marked[y] = 0;
        if (hit == size) continue;
        // Marked prefix [start, start+hit) becomes a new block.
        const State z = static_cast<State>(start.size());
        start.push_back(start[y]);
        end.push_back(start[y] + hit);
        marked.push_back(0);
        pending.push_back(0);
        start[y] += hit;
        for (State i = start[z]; i < end[z]; ++i) block_of[elems[i]] = z;
        if (pending[y]) {
          pending[z] = 1;
          work.push_back(z);
        } else {
          const State pick = (hit <= size - hit) ? z : y;
          pending[pick] = 1;
          work.push_back(pick);
        }
      }
      touched.clear();
    }
  }
  return block_of;
}

}  // namespace

Machine minimize_machine(const Machine& input) {
  Machine m = canonical_reachable(input);
  const std::vector<State> block = hopcroft_blocks(m);
  const std::size_t k = m.sig.symbol_count();
  const std::size_t blocks = m.states() == 0 ? 0 : *std::max_element(block.begin(), block.end()) + 1;
  Machine q;
  q.sig = m.sig;
  q.initial = block[m.initial];
  q.label.assign(blocks, 0);
  q.delta.assign(blocks * k, 0);
  for (std::size_t s = 0; s < m.states(); ++s) {
    const State b = block[s];
    q.label[b] = m.label[s];
    for (std::size_t a = 0; a < k; ++a) q.delta[b * k + a] = block[m.delta[s * k + a]];
  }
  return canonical_reachable(q);
}

bool isomorphic_machines(const Machine& a, const Machine& b) {
  if (a.sig != b.sig || a.states() != b.states()) return false;
  const std::size_t k = a.sig.symbol_count();
  constexpr State kUnseen = ~State{0};
  std::vector<State> fwd(a.states(), kUnseen), bwd(b.states(), kUnseen);
  std::vector<State> queue{a.initial};
  fwd[a.initial] = b.initial;
  bwd[b.initial] = a.initial;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const State p = queue[head];
    const State q = fwd[p];
    if (a.label[p] != b.label[q]) return false;
    for (std::size_t s = 0; s < k; ++s) {
      const State pt = a.delta[p * k + s];
      const State qt = b.delta[q * k + s];
      if (fwd[pt] == kUnseen && bwd[qt] == kUnseen) {
        fwd[pt] = qt;
        bwd[qt] = pt;
        queue.push_back(pt);
      } else if (fwd[pt] != qt || bwd[qt] != pt) {
        return false;
      }
    }
  }
  return queue.size() == a.states();
}

Machine to_machine(const Automaton& a) {
  Machine m;
  m.sig = a.signature();
  m.delta = a.transitions();
  m.label.assign(a.accepting_flags().begin(), a.accepting_flags().end());
  m.initial = a.initial();
  return m;
}

Automaton to_automaton(Machine m) {
  std::vector<std::uint8_t> acc(m.label.begin(), m.label.end());
  return Automaton(m.sig, std::move(m.delta), std::move(acc), m.initial);
}

}  // namespace tribab::detail

namespace tribab {

Automaton minimize(const Automaton& a) {
  return detail::to_automaton(detail::minimize_machine(detail::to_machine(a)));
}

bool isomorphic(const Automaton& a, const Automaton& b) {
  return detail::isomorphic_machines(detail::to_machine(a), detail::to_machine(b));
}

namespace {
detail::Machine dfao_machine(const Dfao& d) {
  return {d.signature(), d.transitions(), d.outputs(), d.initial()};
}
}  // namespace

Dfao minimize(const Dfao& d) {
  detail::Machine m = detail::minimize_machine(dfao_machine(d));
  return Dfao(m.sig, std::move(m.delta), std::move(m.label), m.initial);
}

bool isomorphic(const Dfao& a, const Dfao& b) {
  return detail::isomorphic_machines(dfao_machine(a), dfao_machine(b));
}

}  // namespace tribab
