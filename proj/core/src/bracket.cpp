#include <nestord/bracket.hpp>

#include <nestord/errors.hpp>
#include <nestord/fprec.hpp>
#include <nestord/representability.hpp>

#include <algorithm>

namespace nestord {

namespace {

auto selectors_by(const Family & f, auto && recipe) -> std::vector<std::vector<Element>>
{
    std::vector<std::vector<Element>> out;
    for (Mask a : f.sets())
        out.push_back(recipe(a));
    return out;
}

} // namespace

auto fr_bracket(const Family & f, int max_orders, RecursiveIndex * solver) -> IndexCertificate
{
    IndexCertificate cert = solver != nullptr ? solver->certificate(f) : no_rec(f);
    cert.fr_lower = std::max(0, cert.value);
    const int m = f.ground_size();

    auto add = [&](UpperCertificate c) {
        if (c.bound < cert.fr_lower) {
            c.contradiction = true;
            cert.findings.push_back(to_string(c.kind) + " certificate bound " + std::to_string(c.bound) +
                                    " is below the index " + std::to_string(cert.fr_lower));
        }
        cert.fr_upper.push_back(std::move(c));
    };

    if (is_chain(f))
        add({CertificateKind::chain, 0, std::monostate{}, false});

    for (int k = 1; k <= max_orders; ++k) {
        try {
            auto found = search_orders(f, k);
            if (found.orders) {
                auto rep = is_representable(f, *found.orders);
                add({CertificateKind::orders, k - 1, OrdersWitness{std::move(*found.orders), std::move(rep.selectors)},
                     false});
                break;
            }
        }
        catch (const ResourceGuardError &) {
            cert.findings.push_back("orders search with k=" + std::to_string(k) + " skipped (resource guard)");
            break;
        }
    }

    if (m <= max_onemin_ground_size) {
        if (auto om = onemin_certificate(f))
            add({CertificateKind::onemin, 1, OneminWitness{om->relabeling, om->prec.order, om->pivot}, false});
    }
    else {
        cert.findings.push_back("onemin search skipped (resource guard)");
    }

    if (m >= 3) {
        for (Element z = m; z >= 1; --z) {
            const Mask missing = f.ground_mask() & ~bit(z);
            if (f.contains(missing))
                continue;
            add({CertificateKind::proper, m - 2,
                 OrdersWitness{proper_orders(m, missing),
                               selectors_by(f, [&](Mask a) { return proper_selectors(m, missing, a); })},
                 false});
            break;
        }
    }

    if (m >= 2)
        add({CertificateKind::full_cube, m - 1,
             OrdersWitness{full_cube_orders(m), selectors_by(f, [&](Mask a) { return full_cube_selectors(m, a); })},
             false});

    return cert;
}

} // namespace nestord
