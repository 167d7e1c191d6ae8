#pragma once

#include <string>
#include <vector>

#include "numera/errors.hpp"

namespace numera {

/// A finite word is a sequence of letter indices into some alphabet.
using Word = std::vector<int>;

/// An ultimately periodic infinite word u v^omega in canonical form:
/// the period is primitive and the preperiod is as short as possible.
struct UpWord {
  Word preperiod;
  Word period;

  UpWord() = default;
  UpWord(Word u, Word v) : preperiod(std::move(u)), period(std::move(v)) {
    if (period.empty()) throw DomainError("empty period");
    canonicalize();
  }

  int at(std::size_t i) const {
    if (i < preperiod.size()) return preperiod[i];
    return period[(i - preperiod.size()) % period.size()];
  }

  bool operator==(const UpWord& o) const = default;

  /// Shift off the first letter.
  UpWord shifted() const {
    UpWord w = *this;
    if (!w.preperiod.empty()) {
      w.preperiod.erase(w.preperiod.begin());
    } else {
      w.period.push_back(w.period.front());
      w.period.erase(w.period.begin());
    }
    return UpWord(w.preperiod, w.period);
  }

 private:
  void canonicalize() {
    // primitive period
    for (std::size_t d = 1; d <= period.size() / 2; ++d) {
      if (period.size() % d != 0) continue;
      bool ok = true;
      for (std::size_t i = d; i < period.size() && ok; ++i)
        ok = period[i] == period[i - d];
      if (ok) {
        period.resize(d);
        break;
      }
    }
    // absorb a matching tail of the preperiod by rotating the period
    while (!preperiod.empty() && preperiod.back() == period.back()) {
      period.insert(period.begin(), period.back());
      period.pop_back();
      preperiod.pop_back();
    }
  }
};

}  // namespace numera
