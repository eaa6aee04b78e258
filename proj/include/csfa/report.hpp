#pragma once

#include <string>

#include "json.hpp"

#include "csfa/automaton.hpp"
#include "csfa/cluster.hpp"
#include "csfa/lab.hpp"
#include "csfa/monoid.hpp"
#include "csfa/sync.hpp"

namespace csfa {

/// Reports keep keys in insertion order so the serialization is stable.
using Json = nlohmann::ordered_json;

Json properties_json(const Automaton& a);
Json clusters_json(const Automaton& a, const ClusterDecomposition& d);
Json sync_json(const Automaton& a, const SyncResult& r);
Json monoid_json(const Automaton& a, const MonoidClosure& m);
Json fixture_checks_json(const std::vector<FixtureCheck>& checks);
Json sweep_json(const NSweep& s);
Json sweep_report_json(const SweepReport& r);

/// Two-space indented JSON followed by a newline.
std::string dump_report(const Json& j);

}  // namespace csfa
