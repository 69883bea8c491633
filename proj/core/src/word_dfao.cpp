#include "tribab/word_dfao.hpp"

#include <stdexcept>

#include "tribab/numeration.hpp"

namespace tribab {

namespace {

// States: 0 = ends in 0 (or empty), 1 = ends in exactly one 1,
// 2 = ends in 11, 3 = dead.
Dfao trailing_ones_dfao(std::vector<int> outputs) {
  std::vector<State> delta = {
      0, 1,  // ends in 0
      0, 2,  // ends in 01
      0, 3,  // ends in 11
      3, 3,  // saw 111
  };
  outputs.push_back(kDeadOutput);
  return minimize(Dfao(TrackSignature(1), std::move(delta), std::move(outputs), 0));
}

}  // namespace

Dfao build_trl() { return trailing_ones_dfao({0, 1, 1}); }

Dfao build_tr() { return trailing_ones_dfao({0, 1, 2}); }

int eval(const Dfao& d, std::uint64_t n) {
  if (d.tracks() != 1) throw std::invalid_argument("eval needs a 1-track DFAO");
  const std::string bits = to_trib(n).bits();
  State q = d.initial();
  for (char c : bits) q = d.next(q, c == '1' ? 1 : 0);
  return d.output(q);
}

WordDfaoRegistry WordDfaoRegistry::with_builtins() {
  WordDfaoRegistry r;
  r.add("TR", build_tr());
  r.add("TRL", build_trl());
  return r;
}

void WordDfaoRegistry::add(std::string name, Dfao d) {
  if (d.tracks() != 1) throw std::invalid_argument("word DFAO '" + name + "' must have one track");
  entries_.insert_or_assign(std::move(name), std::move(d));
}

const Dfao* WordDfaoRegistry::find(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace tribab
