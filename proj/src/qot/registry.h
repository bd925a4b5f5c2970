#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qot/qscd.h"
#include "qot/rng.h"
#include "qot/transcript.h"

namespace qot {

struct HandleId {
  std::uint64_t value = 0;

  friend auto operator<=>(const HandleId&, const HandleId&) = default;
};

// A party touched a handle it does not own, or an unknown handle.
class HandleAccessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct TransferRecord {
  HandleId handle;
  Party from;
  Party to;
};

// Holds every quantum system of one session behind opaque handles. Parties
// can only apply declared operations to handles they own; reading
// amplitudes or preparation metadata needs an Inspector.
class QuantumRegistry {
 public:
  // Measurement outcomes are drawn from a stream seeded here.
  explicit QuantumRegistry(std::uint64_t measurement_seed) : nature_(measurement_seed) {}

  HandleId create(Party owner, QscdSample sample);

  // The first transfer of a handle snapshots its state as sent.
  void transfer(Party from, Party to, HandleId h);

  Party owner(HandleId h) const;

  // M_key on the handle; returns the raw label (0 for +, 1 for −).
  int measure(Party who, HandleId h, const Permutation& key);

  void apply_sign(Party who, HandleId h);

  std::size_t size() const { return entries_.size(); }
  const std::vector<TransferRecord>& transfers() const { return transfers_; }

 private:
  friend class Inspector;

  struct Entry {
    Party owner;
    QscdSample current;
    std::optional<QscdSample> as_sent;
  };

  Entry& owned_entry(Party who, HandleId h);

  std::map<HandleId, Entry> entries_;
  std::vector<TransferRecord> transfers_;
  std::uint64_t next_id_ = 1;
  Rng nature_;
};

// Privileged read access for post-hoc verification.
class Inspector {
 public:
  explicit Inspector(const QuantumRegistry& registry) : registry_(registry) {}

  std::vector<HandleId> handles() const;
  const QscdSample& current(HandleId h) const;
  // Falls back to the current state for handles never transferred.
  const QscdSample& as_sent(HandleId h) const;

 private:
  const QuantumRegistry& registry_;
};

}  // namespace qot
