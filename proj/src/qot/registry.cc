#include "qot/registry.h"

#include <string>

namespace qot {

namespace {

std::string describe(HandleId h) { return "handle " + std::to_string(h.value); }

}  // namespace

HandleId QuantumRegistry::create(Party owner, QscdSample sample) {
  const HandleId id{next_id_++};
  entries_.emplace(id, Entry{owner, std::move(sample), std::nullopt});
  return id;
}

QuantumRegistry::Entry& QuantumRegistry::owned_entry(Party who, HandleId h) {
  auto it = entries_.find(h);
  if (it == entries_.end()) throw HandleAccessError("unknown " + describe(h));
  if (it->second.owner != who) {
    throw HandleAccessError(std::string(party_name(who)) + " does not own " + describe(h));
  }
  return it->second;
}

void QuantumRegistry::transfer(Party from, Party to, HandleId h) {
  Entry& e = owned_entry(from, h);
  if (!e.as_sent) e.as_sent = e.current;
  e.owner = to;
  transfers_.push_back({h, from, to});
}

Party QuantumRegistry::owner(HandleId h) const {
  auto it = entries_.find(h);
  if (it == entries_.end()) throw HandleAccessError("unknown " + describe(h));
  return it->second.owner;
}

int QuantumRegistry::measure(Party who, HandleId h, const Permutation& key) {
  Entry& e = owned_entry(who, h);
  auto m = measure_bit(key, e.current, nature_);
  e.current = std::move(m.sample);
  return m.label;
}

void QuantumRegistry::apply_sign(Party who, HandleId h) {
  Entry& e = owned_entry(who, h);
  e.current = convert_sign(e.current);
}

std::vector<HandleId> Inspector::handles() const {
  std::vector<HandleId> out;
  for (const auto& [id, entry] : registry_.entries_) out.push_back(id);
  return out;
}

const QscdSample& Inspector::current(HandleId h) const {
  auto it = registry_.entries_.find(h);
  if (it == registry_.entries_.end()) throw HandleAccessError("unknown " + describe(h));
  return it->second.current;
}

const QscdSample& Inspector::as_sent(HandleId h) const {
  auto it = registry_.entries_.find(h);
  if (it == registry_.entries_.end()) throw HandleAccessError("unknown " + describe(h));
  return it->second.as_sent ? *it->second.as_sent : it->second.current;
}

}  // namespace qot
