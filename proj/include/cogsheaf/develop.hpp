#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cogsheaf/sheaf.hpp"

namespace cogsheaf {

/// Conjugator table of a sheaf along a maximal tree: for each object w, the
/// matrix M_w carrying the reference stalk at the base object to the stalk
/// at w.  M_base is the identity and every M_w is invertible.
template <typename F>
struct SheafPathTable {
    ObjId base = 0;
    std::map<ObjId, Matrix<F>> to_object;

    const Matrix<F>& at(ObjId w) const {
        auto it = to_object.find(w);
        if (it == to_object.end())
            throw InvalidInputError("no sheaf path to object " + std::to_string(w));
        return it->second;
    }
};

namespace detail {

/// Matrix of one oriented step: traversing an arrow from the bigger cell to
/// its face (a minus step) applies the arrow matrix; traversing against it
/// (a plus step) applies the inverse.  This is the unique assignment under
/// which consecutive step matrices compose with matching shapes.
template <typename F>
Matrix<F> step_matrix(const Sheaf<F>& sheaf, const PathStep& s) {
    const Matrix<F>& a = sheaf.arrow_matrix(s.arrow);
    return s.sign == StepSign::minus ? a : mat_inverse(a);
}

} // namespace detail

/// The sheaf path towards w: the signed product of arrow matrices along the
/// unique tree path from base to w, latest step leftmost.  Identity when
/// w = base.
template <typename F>
Matrix<F> sheaf_path(const Sheaf<F>& sheaf, const Tree& tree, ObjId base, ObjId w) {
    const Scwol& x = sheaf.base()->base();
    const EdgePath path = tree_path(x, tree, base, w);
    Matrix<F> m = Matrix<F>::identity(sheaf.field(), static_cast<std::size_t>(sheaf.dim(base)));
    for (const PathStep& s : path.steps) m = mat_mul(detail::step_matrix(sheaf, s), m);
    return m;
}

/// All sheaf paths at once, accumulated along a breadth-first walk of the
/// tree: M at an unvisited neighbour is the step matrix times M at its
/// parent.  Agrees with sheaf_path on every object.
template <typename F>
SheafPathTable<F> sheaf_path_table(const Sheaf<F>& sheaf, const Tree& tree, ObjId base) {
    const Scwol& x = sheaf.base()->base();
    SheafPathTable<F> table;
    table.base = base;
    table.to_object.emplace(
        base, Matrix<F>::identity(sheaf.field(), static_cast<std::size_t>(sheaf.dim(base))));

    std::map<ObjId, std::vector<ArrowId>> incident;
    for (ArrowId aid : tree.arrows) {
        const Arrow& a = x.arrow(aid);
        incident[a.initial].push_back(aid);
        if (a.terminal != a.initial) incident[a.terminal].push_back(aid);
    }

    std::vector<ObjId> frontier{base};
    while (!frontier.empty()) {
        std::vector<ObjId> next;
        for (ObjId u : frontier) {
            auto it = incident.find(u);
            if (it == incident.end()) continue;
            for (ArrowId aid : it->second) {
                const Arrow& a = x.arrow(aid);
                const ObjId other = a.initial == u ? a.terminal : a.initial;
                if (table.to_object.count(other)) continue;
                const PathStep step{aid, a.initial == u ? StepSign::minus : StepSign::plus};
                table.to_object.emplace(
                    other, mat_mul(detail::step_matrix(sheaf, step), table.to_object.at(u)));
                next.push_back(other);
            }
        }
        frontier = std::move(next);
    }
    if (table.to_object.size() != tree.objects.size())
        throw DisconnectedScwolError("tree does not span its objects");
    return table;
}

/// Conjugate of a local representation value into the reference stalk:
/// M_sigma^-1 . rho_sigma(g) . M_sigma.
template <typename F>
Matrix<F> local_group_image(const Sheaf<F>& sheaf, const SheafPathTable<F>& paths, ObjId sigma, Elt g) {
    const Matrix<F>& m = paths.at(sigma);
    return mat_mul(mat_mul(mat_inverse(m), sheaf.representation(sigma, g)), m);
}

/// The arrow's element of the witness group:
/// M_terminal(a)^-1 . A_a . M_initial(a).  Identity for tree arrows.
template <typename F>
Matrix<F> arrow_element(const Sheaf<F>& sheaf, const SheafPathTable<F>& paths, ArrowId a) {
    const Scwol& x = sheaf.base()->base();
    return mat_mul(mat_mul(mat_inverse(paths.at(x.terminal(a))), sheaf.arrow_matrix(a)),
                   paths.at(x.initial(a)));
}

/// One verified equation family of a certificate.
struct TranscriptEntry {
    std::string family;
    long long checked = 0;
    bool passed = false;
    std::string counterexample; // empty when passed

    friend bool operator==(const TranscriptEntry& a, const TranscriptEntry& b) {
        return a.family == b.family && a.checked == b.checked && a.passed == b.passed &&
               a.counterexample == b.counterexample;
    }
};

/// A developability certificate: the chosen tree and base object, the
/// assembled morphism into GL (one matrix per local group element and per
/// arrow), and a transcript of every equation family verified.  verdict is
/// true only when the sheaf satisfied the dev properties and every morphism
/// equation and injectivity check passed.
template <typename F>
struct DevCertificate {
    F field;
    std::vector<ArrowId> tree_arrows;
    ObjId base = 0;
    std::map<ObjId, std::vector<Matrix<F>>> object_images; // Phi_sigma(g), indexed by g
    std::map<ArrowId, Matrix<F>> arrow_images;             // Phi(a)
    std::vector<TranscriptEntry> transcript;
    bool verdict = false;

    friend bool operator==(const DevCertificate& a, const DevCertificate& b) {
        return a.field == b.field && a.tree_arrows == b.tree_arrows && a.base == b.base &&
               a.object_images == b.object_images && a.arrow_images == b.arrow_images &&
               a.transcript == b.transcript && a.verdict == b.verdict;
    }
};

/// Name of the first failing family, empty for a passing certificate.
template <typename F>
std::string certificate_failure(const DevCertificate<F>& cert) {
    for (const TranscriptEntry& e : cert.transcript)
        if (!e.passed) return e.family + (e.counterexample.empty() ? "" : " (" + e.counterexample + ")");
    return "";
}

/// Runs the whole reverse direction: validates the inputs, fixes the
/// deterministic tree (breadth-first from the smallest object) and base
/// (the smallest object id), checks the dev properties, assembles the
/// morphism Phi from sheaf paths, and verifies exhaustively that
///   (E) Phi_terminal(a)(psi_a(g)) = Phi(a) Phi_initial(a)(g) Phi(a)^-1,
///       Phi_terminal(a)(g_{a,b}) Phi(ab) = Phi(a) Phi(b),
///       and every Phi_sigma has trivial kernel.
/// A sheaf failing the dev properties yields verdict false with the failing
/// property in the transcript, not an error.
template <typename F>
DevCertificate<F> develop(const ComplexOfGroups& complex, const Sheaf<F>& sheaf) {
    if (*sheaf.base() != complex)
        throw InvalidInputError("sheaf does not live over the given complex of groups");
    {
        const ValidationReport r = validate_cog(complex);
        if (!r.ok())
            throw InvalidInputError("invalid complex of groups: " + r.violations().front().rule +
                                    " at " + r.violations().front().where);
        const ValidationReport s = validate_sheaf(sheaf);
        if (!s.ok())
            throw InvalidInputError("invalid sheaf: " + s.violations().front().rule + " at " +
                                    s.violations().front().where);
    }

    const Scwol& x = sheaf.base()->base();
    const Tree tree = maximal_tree(x); // throws DisconnectedScwolError when disconnected

    DevCertificate<F> cert{sheaf.field(), tree.arrows, x.objects().front(), {}, {}, {}, false};

    const DevReport dev = check_dev_properties(sheaf);
    {
        const long long objects = static_cast<long long>(x.objects().size());
        cert.transcript.push_back({"constant-rank", objects, dev.constant_rank,
                                   dev.rank_mismatch
                                       ? "objects " + std::to_string(dev.rank_mismatch->first) + " and " +
                                             std::to_string(dev.rank_mismatch->second) + " differ"
                                       : ""});
        cert.transcript.push_back({"invertibility", static_cast<long long>(x.arrows().size()),
                                   dev.all_invertible,
                                   dev.singular_arrow ? "arrow " + std::to_string(*dev.singular_arrow)
                                                      : ""});
        long long kernel_checks = 0;
        for (ObjId v : x.objects())
            kernel_checks += sheaf.base()->group_at(v)->order() - 1;
        cert.transcript.push_back({"local-injectivity", kernel_checks, dev.injective_on_local_groups,
                                   dev.kernel_witness
                                       ? "object " + std::to_string(dev.kernel_witness->first) +
                                             ", element " + std::to_string(dev.kernel_witness->second)
                                       : ""});
    }
    if (!dev.verdict()) return cert; // sheaf paths need invertibility; stop here

    const SheafPathTable<F> paths = sheaf_path_table(sheaf, tree, cert.base);
    const ComplexOfGroups& c = *sheaf.base();

    for (ObjId v : x.objects()) {
        std::vector<Matrix<F>> images;
        const int n = c.group_at(v)->order();
        images.reserve(static_cast<std::size_t>(n));
        const Matrix<F> m_inv = mat_inverse(paths.at(v));
        for (Elt g = 0; g < n; ++g)
            images.push_back(mat_mul(mat_mul(m_inv, sheaf.representation(v, g)), paths.at(v)));
        cert.object_images.emplace(v, std::move(images));
    }
    for (const Arrow& a : x.arrows())
        cert.arrow_images.emplace(a.id, arrow_element(sheaf, paths, a.id));

    auto phi_obj = [&cert](ObjId v, Elt g) -> const Matrix<F>& {
        return cert.object_images.at(v)[static_cast<std::size_t>(g)];
    };

    TranscriptEntry conj{"morphism-conjugation", 0, true, ""};
    for (const Arrow& a : x.arrows()) {
        const GroupHom& psi = c.embedding(a.id);
        const Matrix<F>& phi_a = cert.arrow_images.at(a.id);
        const Matrix<F> phi_a_inv = mat_inverse(phi_a);
        const int n = c.group_at(a.initial)->order();
        for (Elt g = 0; g < n; ++g) {
            ++conj.checked;
            const Matrix<F> lhs = phi_obj(a.terminal, psi.apply(g));
            const Matrix<F> rhs = mat_mul(mat_mul(phi_a, phi_obj(a.initial, g)), phi_a_inv);
            if (conj.passed && lhs != rhs) {
                conj.passed = false;
                conj.counterexample =
                    "arrow " + std::to_string(a.id) + ", element " + std::to_string(g);
            }
        }
    }
    cert.transcript.push_back(conj);

    TranscriptEntry comp{"morphism-composition", 0, true, ""};
    for (const auto& pr : composable_sequences(x, 2)) {
        const ArrowId a = pr[0], b = pr[1];
        const auto ab = x.composite(a, b);
        ++comp.checked;
        const Matrix<F> lhs =
            mat_mul(phi_obj(x.terminal(a), c.twist(a, b)), cert.arrow_images.at(*ab));
        const Matrix<F> rhs = mat_mul(cert.arrow_images.at(a), cert.arrow_images.at(b));
        if (comp.passed && lhs != rhs) {
            comp.passed = false;
            comp.counterexample = "pair (" + std::to_string(a) + "," + std::to_string(b) + ")";
        }
    }
    cert.transcript.push_back(comp);

    TranscriptEntry inj{"morphism-local-injectivity", 0, true, ""};
    for (ObjId v : x.objects()) {
        const int n = c.group_at(v)->order();
        for (Elt g = 1; g < n; ++g) {
            ++inj.checked;
            if (inj.passed && phi_obj(v, g).is_identity()) {
                inj.passed = false;
                inj.counterexample = "object " + std::to_string(v) + ", element " + std::to_string(g);
            }
        }
    }
    cert.transcript.push_back(inj);

    cert.verdict = conj.passed && comp.passed && inj.passed;
    return cert;
}

} // namespace cogsheaf
