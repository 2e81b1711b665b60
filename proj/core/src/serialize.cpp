#include <nestord/serialize.hpp>

#include <nestord/errors.hpp>

namespace nestord {

auto set_json(Mask a) -> Json { return Json(elements_of(a)); }

auto to_json(const Family & f) -> Json
{
    Json sets = Json::array();
    for (Mask a : f.sets())
        sets.push_back(set_json(a));
    Json j;
    j["m"] = f.ground_size();
    j["text"] = format_family(f);
    j["sets"] = std::move(sets);
    return j;
}

auto to_json(const LinearOrder & o) -> Json
{
    if (o.size() <= 9)
        return o.to_string();
    return Json(std::vector<Element>(o.sequence().begin(), o.sequence().end()));
}

auto to_json(const NestedOrders & s) -> Json
{
    Json j;
    j["m"] = s.ground_size();
    j["n"] = s.nesting() ? Json(*s.nesting()) : Json(nullptr);
    Json seqs = Json::array();
    for (const auto & q : s.sequences())
        seqs.push_back(q);
    j["seqs"] = std::move(seqs);
    return j;
}

auto nested_from_json(const Json & j) -> NestedOrders
{
    const int m = j.at("m").get<int>();
    std::optional<int> n;
    if (!j.at("n").is_null())
        n = j.at("n").get<int>();
    NestedOrders s(m, n);
    for (const auto & q : j.at("seqs"))
        s.insert(q.get<std::vector<Element>>());
    return s;
}

namespace {

auto clause_json(const ClauseCheck & c) -> Json
{
    Json j;
    j["pass"] = c.pass;
    if (!c.pass) {
        j["witness"] = c.witness;
        j["note"] = c.note;
    }
    return j;
}


} // namespace

auto to_json(const ValidationReport & r) -> Json
{
    Json j;
    j["nesting"] = r.nesting ? Json(*r.nesting) : Json(nullptr);
    j["singletons"] = clause_json(r.singletons);
    j["distinct"] = clause_json(r.distinct);
    j["closed"] = clause_json(r.closed);
    j["transitive"] = clause_json(r.transitive);
    j["length_bound"] = clause_json(r.length_bound);
    Json comp = Json::array();
    for (std::size_t k = 0; k < r.comparable.size(); ++k) {
        auto c = clause_json(r.comparable[k]);
        c["k"] = k;
        comp.push_back(std::move(c));
    }
    j["comparable"] = std::move(comp);
    j["valid_literal"] = r.valid();
    j["valid_through_n"] = r.valid_through_n();
    return j;
}

auto to_string(Class4Label label) -> std::string
{
    switch (label) {
    case Class4Label::chain: return "chain";
    case Class4Label::acyclic: return "acyclic";
    case Class4Label::cyclic: return "cyclic";
    case Class4Label::full_cube: return "full_cube";
    }
    return "unknown";
}

auto to_string(IndexMethod method) -> std::string { return method == IndexMethod::direct ? "direct" : "recursion"; }

auto to_json(const UpperCertificate & c) -> Json
{
    Json j;
    j["kind"] = to_string(c.kind);
    j["bound"] = c.bound;
    if (const auto * w = std::get_if<OrdersWitness>(&c.witness)) {
        Json orders = Json::array();
        for (const auto & o : w->orders)
            orders.push_back(to_json(o));
        j["orders"] = std::move(orders);
        j["selectors"] = w->selectors;
    }
    else if (const auto * w = std::get_if<OneminWitness>(&c.witness)) {
        j["relabeling"] = w->relabeling;
        j["prec"] = to_json(w->prec);
        j["pivot"] = w->pivot;
    }
    j["contradiction"] = c.contradiction;
    return j;
}

auto to_json(const IndexCertificate & c) -> Json
{
    Json j;
    j["value"] = c.value;
    if (c.exceeded)
        j["exceeded"] = true;
    j["method"] = to_string(c.method);
    if (c.witness)
        j["witness"] = to_json(*c.witness);
    if (!c.trace.empty()) {
        Json trace = Json::array();
        for (const auto & step : c.trace) {
            Json s;
            s["A"] = set_json(step.a_set);
            s["a"] = step.a;
            s["link_value"] = step.link_value;
            trace.push_back(std::move(s));
        }
        j["trace"] = std::move(trace);
    }
    j["fr_lower"] = c.fr_lower;
    if (!c.fr_upper.empty()) {
        Json ups = Json::array();
        for (const auto & u : c.fr_upper)
            ups.push_back(to_json(u));
        j["fr_upper"] = std::move(ups);
        j["fr_best_upper"] = *c.best_upper();
        j["tight"] = c.tight();
    }
    if (!c.findings.empty())
        j["findings"] = c.findings;
    return j;
}

auto to_json(const NestboundReport & r) -> Json
{
    Json j;
    j["index"] = r.index;
    Json rows = Json::array();
    for (const auto & row : r.rows) {
        Json x;
        x["k"] = row.k;
        x["set_size"] = row.set_size;
        x["count"] = row.count;
        x["bound_printed"] = row.bound_printed;
        x["bound_derived"] = row.bound_derived;
        x["pass_printed"] = row.pass_printed;
        x["pass_derived"] = row.pass_derived;
        rows.push_back(std::move(x));
    }
    j["rows"] = std::move(rows);
    j["printed_holds"] = r.printed_holds();
    j["derived_holds"] = r.derived_holds();
    return j;
}

auto to_json(const CycleWitness & w) -> Json
{
    Json j;
    j["support"] = set_json(w.support);
    j["cycle"] = w.cycle;
    return j;
}

} // namespace nestord
