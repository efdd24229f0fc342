#include "semnet/rdfs.hpp"

#include "json.hpp"
#include "semnet/error.hpp"
#include "semnet/vocab.hpp"

namespace semnet {

std::string_view to_string(RdfsRule rule) {
  switch (rule) {
    case RdfsRule::SubClassResource: return "sub-class-resource";
    case RdfsRule::DatatypeLiteral: return "datatype-literal";
    case RdfsRule::SubPropertyTrans: return "subproperty-trans";
    case RdfsRule::SubClassTrans: return "subclass-trans";
    case RdfsRule::ResSubject: return "res-subject";
    case RdfsRule::PropPredicate: return "prop-predicate";
    case RdfsRule::ResObject: return "res-object";
    case RdfsRule::TypeLift: return "type-lift";
    case RdfsRule::DomainType: return "domain-type";
    case RdfsRule::RangeType: return "range-type";
  }
  return "unknown";
}

namespace {

struct Vocab {
  TermId type, property, cls, resource, literal, datatype, domain, range, sub_class, sub_prop;

  explicit Vocab(TripleStore& st)
      : type(st.intern(Term::uri(std::string(vocab::kRdfType)))),
        property(st.intern(Term::uri(std::string(vocab::kRdfProperty)))),
        cls(st.intern(Term::uri(std::string(vocab::kRdfsClass)))),
        resource(st.intern(Term::uri(std::string(vocab::kRdfsResource)))),
        literal(st.intern(Term::uri(std::string(vocab::kRdfsLiteral)))),
        datatype(st.intern(Term::uri(std::string(vocab::kRdfsDatatype)))),
        domain(st.intern(Term::uri(std::string(vocab::kRdfsDomain)))),
        range(st.intern(Term::uri(std::string(vocab::kRdfsRange)))),
        sub_class(st.intern(Term::uri(std::string(vocab::kRdfsSubClassOf)))),
        sub_prop(st.intern(Term::uri(std::string(vocab::kRdfsSubPropertyOf)))) {}
};

struct Candidate {
  IdTriple triple;
  RdfsRule rule;
  IdTriple first;
  std::optional<IdTriple> second;
};

class RdfsReasoner {
 public:
  RdfsReasoner(TripleStore& store, const ReasonerLimits& limits)
      : store_(store), v_(store), limits_(limits) {}

  std::vector<Entailment> run() {
    std::vector<IdTriple> delta = store_.id_triples();
    std::vector<Candidate> found;
    while (!delta.empty()) {
      std::vector<IdTriple> next;
      for (IdTriple t : delta) {
        found.clear();
        fire(t, found);
        for (const Candidate& c : found) {
          if (!store_.insert(c.triple)) continue;
          next.push_back(c.triple);
          derived_.push_back(c);
          if (derived_.size() > limits_.max_derived)
            throw ResourceLimitError("RDFS materialization exceeded " +
                                     std::to_string(limits_.max_derived) + " derived triples");
        }
      }
      delta = std::move(next);
    }

    std::vector<Entailment> out;
    out.reserve(derived_.size());
    for (const Candidate& c : derived_) {
      Entailment e{store_.to_triple(c.triple), std::string(to_string(c.rule)), {}};
      e.premises.push_back(store_.to_triple(c.first));
      if (c.second) e.premises.push_back(store_.to_triple(*c.second));
      out.push_back(std::move(e));
    }
    return out;
  }

 private:
  bool is_literal(TermId id) const { return store_.term(id).is_literal(); }

  // Every rule instance in which t is one of the premises; the other premise
  // (if any) is looked up in the full store.
  void fire(IdTriple t, std::vector<Candidate>& out) const {
    const auto [s, p, o] = t;

    out.push_back({{s, v_.type, v_.resource}, RdfsRule::ResSubject, t, std::nullopt});
    out.push_back({{p, v_.type, v_.property}, RdfsRule::PropPredicate, t, std::nullopt});
    if (!is_literal(o))
      out.push_back({{o, v_.type, v_.resource}, RdfsRule::ResObject, t, std::nullopt});

    if (p == v_.type) {
      if (o == v_.cls)
        out.push_back({{s, v_.sub_class, v_.resource}, RdfsRule::SubClassResource, t, std::nullopt});
      if (o == v_.datatype)
        out.push_back({{s, v_.sub_class, v_.literal}, RdfsRule::DatatypeLiteral, t, std::nullopt});
      // (s type o) (o subClassOf z)
      store_.scan(o, v_.sub_class, std::nullopt, [&](IdTriple u) {
        out.push_back({{s, v_.type, u.o}, RdfsRule::TypeLift, t, u});
      });
    }

    if (p == v_.sub_class) {
      store_.scan(o, v_.sub_class, std::nullopt, [&](IdTriple u) {
        out.push_back({{s, v_.sub_class, u.o}, RdfsRule::SubClassTrans, t, u});
      });
      store_.scan(std::nullopt, v_.sub_class, s, [&](IdTriple u) {
        out.push_back({{u.s, v_.sub_class, o}, RdfsRule::SubClassTrans, u, t});
      });
      // (x type s) (s subClassOf o)
      store_.scan(std::nullopt, v_.type, s, [&](IdTriple u) {
        out.push_back({{u.s, v_.type, o}, RdfsRule::TypeLift, u, t});
      });
    }

    if (p == v_.sub_prop) {
      store_.scan(o, v_.sub_prop, std::nullopt, [&](IdTriple u) {
        out.push_back({{s, v_.sub_prop, u.o}, RdfsRule::SubPropertyTrans, t, u});
      });
      store_.scan(std::nullopt, v_.sub_prop, s, [&](IdTriple u) {
        out.push_back({{u.s, v_.sub_prop, o}, RdfsRule::SubPropertyTrans, u, t});
      });
    }

    if (p == v_.domain) {
      store_.scan(std::nullopt, s, std::nullopt, [&](IdTriple u) {
        out.push_back({{u.s, v_.type, o}, RdfsRule::DomainType, t, u});
      });
    }
    if (p == v_.range) {
      store_.scan(std::nullopt, s, std::nullopt, [&](IdTriple u) {
        if (!is_literal(u.o)) out.push_back({{u.o, v_.type, o}, RdfsRule::RangeType, t, u});
      });
    }

    // t as the instance premise of the domain/range rules.
    store_.scan(p, v_.domain, std::nullopt, [&](IdTriple u) {
      out.push_back({{s, v_.type, u.o}, RdfsRule::DomainType, u, t});
    });
    if (!is_literal(o)) {
      store_.scan(p, v_.range, std::nullopt, [&](IdTriple u) {
        out.push_back({{o, v_.type, u.o}, RdfsRule::RangeType, u, t});
      });
    }
  }

  TripleStore& store_;
  Vocab v_;
  ReasonerLimits limits_;
  std::vector<Candidate> derived_;
};

}  // namespace

std::vector<Entailment> materialize_rdfs(TripleStore& store, const ReasonerLimits& limits) {
  return RdfsReasoner(store, limits).run();
}

std::vector<Bindings> entails(const TripleStore& store, const TriplePattern& pattern,
                              const ReasonerLimits& limits) {
  TripleStore snapshot = store;
  materialize_rdfs(snapshot, limits);
  return snapshot.match(pattern);
}

std::string to_json_lines(const std::vector<Entailment>& entailments) {
  std::string out;
  for (const Entailment& e : entailments) {
    nlohmann::json j;
    j["triple"] = to_ntriples_line(e.triple);
    j["rule"] = e.rule;
    j["premises"] = nlohmann::json::array();
    for (const Triple& p : e.premises) j["premises"].push_back(to_ntriples_line(p));
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace semnet
