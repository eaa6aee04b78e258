#include "csfa/report.hpp"

namespace csfa {

namespace {

Json states_json(const std::vector<State>& v) {
  Json arr = Json::array();
  for (State s : v) arr.push_back(s);
  return arr;
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json properties_json(const Automaton& a) {
  Json j;
  j["states"] = a.state_count();
  j["alphabet"] = a.alphabet();
  j["initial"] = a.initial();
  j["finals"] = states_json(a.finals());

  auto circ = circular_letter(a);
  j["circular"] = circ ? Json(a.letter_name(*circ)) : Json(nullptr);
  j["cyclic_ordering"] = circ ? states_json(cyclic_ordering(a, *circ)) : Json(nullptr);

  Json perms = Json::array();
  for (Letter x = 0; x < a.letter_count(); ++x) {
    if (is_permutation_letter(a, x)) perms.push_back(a.letter_name(x));
  }
  j["permutation_letters"] = perms;

  j["accessible"] = is_accessible(a);
  j["coaccessible"] = is_coaccessible(a);
  const auto sfa = is_semi_flower(a);
  j["sfa"] = sfa.holds;
  j["sfa_violation"] = sfa.holds ? Json(nullptr) : Json(std::string(to_string(sfa.violation)));
  j["sfa_witness_cycle"] = sfa.witness_cycle.empty() ? Json(nullptr) : states_json(sfa.witness_cycle);
  j["csfa"] = sfa.holds && circ.has_value();
  if (sfa.holds) {
    j["unique_circular_permutation"] = verify_unique_circular_permutation(a).holds();
  } else {
    j["unique_circular_permutation"] = nullptr;
  }

  Json one_cluster = Json::object();
  Json cycles = Json::object();
  Json levels = Json::object();
  for (Letter x = 0; x < a.letter_count(); ++x) {
    auto d = decompose(a, x);
    const auto& name = a.letter_name(x);
    one_cluster[name] = d.clusters.size() == 1;
    cycles[name] = d.clusters.size() == 1 ? states_json(d.clusters.front().cycle) : Json(nullptr);
    levels[name] = d.max_level;
  }
  j["one_cluster"] = one_cluster;
  j["cycles"] = cycles;
  j["levels"] = levels;
  return j;
}

Json clusters_json(const Automaton& a, const ClusterDecomposition& d) {
  Json j;
  j["letter"] = a.letter_name(d.letter);
  j["cycle"] = d.clusters.size() == 1 ? states_json(d.clusters.front().cycle) : Json(nullptr);
  Json clusters = Json::array();
  for (const auto& c : d.clusters) {
    Json cj;
    cj["members"] = states_json(c.members);
    cj["cycle"] = states_json(c.cycle);
    cj["max_level"] = c.max_level;
    clusters.push_back(cj);
  }
  j["clusters"] = clusters;
  j["levels"] = d.level;
  j["max_level"] = d.max_level;
  return j;
}

Json sync_json(const Automaton& a, const SyncResult& r) {
  Json j;
  j["method"] = std::string(to_string(r.method));
  j["synchronizing"] = r.synchronizing;
  j["word"] = r.word ? Json(render_word(a, *r.word)) : Json(nullptr);
  j["length"] = optional_json(r.word_length());
  j["bound"] = r.cerny_bound;
  j["within_bound"] = optional_json(r.within_bound);
  return j;
}

Json monoid_json(const Automaton& a, const MonoidClosure& m) {
  Json j;
  j["size"] = m.size();
  j["truncated"] = m.truncated();
  j["has_constant"] = optional_json(has_constant(m));
  if (m.truncated()) {
    j["units_order"] = nullptr;
    j["unit_generator_witness"] = nullptr;
  } else {
    auto units = group_of_units(m);
    j["units_order"] = units.order;
    j["unit_generator_witness"] =
        units.cyclic_generator ? Json(render_word(a, m.witness(*units.cyclic_generator)))
                               : Json(nullptr);
  }
  return j;
}

Json fixture_checks_json(const std::vector<FixtureCheck>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json j;
    j["fixture"] = c.fixture;
    j["property"] = c.property;
    j["status"] = c.confirmed ? "confirmed" : "failed";
    arr.push_back(j);
  }
  return arr;
}

Json sweep_json(const NSweep& s) {
  Json j;
  j["n"] = s.n;
  j["mode"] = s.mode == EnumerationMode::exhaustive ? "exhaustive" : "random";
  j["generated"] = s.generated;
  j["csfa"] = s.csfa;
  j["synchronizing"] = s.synchronizing;
  j["non_synchronizing"] = s.non_synchronizing;

  Json by_len = Json::array();
  for (const auto& [len, st] : s.by_cycle_length) {
    Json e;
    e["cycle_length"] = len;
    e["count"] = st.count;
    e["synchronizing"] = st.synchronizing;
    e["non_synchronizing"] = st.non_synchronizing;
    by_len.push_back(e);
  }
  j["by_cycle_length"] = by_len;

  Json checks;
  checks["one_cluster_per_letter"] = s.one_cluster.checked;
  checks["unique_circular_permutation"] = s.unique_permutation.checked;
  checks["fixed_point_cycle_synchronizes"] = s.fixed_point_sync.checked;
  checks["odd_two_cycle_synchronizes"] = s.odd_two_cycle_sync.checked;
  checks["units_cyclic_of_order_n"] = s.units_cyclic.checked;
  checks["deciders_agree"] = s.decider_agreement.checked;
  checks["shortest_within_cerny_bound"] = s.cerny_bound.checked;
  j["checks_passed"] = checks;

  Json ext;
  ext["max_merge_index"] = s.max_merge_index;
  ext["max_shortest_word"] = s.max_shortest_word;
  ext["max_level"] = s.max_level;
  j["extremal"] = ext;

  Json ce;
  ce["even_two_cycle_non_synchronizing"] = s.even_two_cycle_non_sync;
  ce["first_even_two_cycle_non_synchronizing"] =
      s.first_even_two_cycle_non_sync ? states_json(*s.first_even_two_cycle_non_sync)
                                      : Json(nullptr);
  ce["odd_three_cycle_non_synchronizing"] = s.odd_three_cycle_non_sync;
  ce["first_odd_three_cycle_non_synchronizing"] =
      s.first_odd_three_cycle_non_sync ? states_json(*s.first_odd_three_cycle_non_sync)
                                       : Json(nullptr);
  j["counter_evidence"] = ce;
  j["fixtures_enumerated"] = s.fixtures_enumerated;
  return j;
}

Json sweep_report_json(const SweepReport& r) {
  Json j;
  j["fixtures"] = fixture_checks_json(r.fixtures);
  Json sweeps = Json::array();
  for (const auto& s : r.sweeps) sweeps.push_back(sweep_json(s));
  j["sweeps"] = sweeps;
  return j;
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace csfa
