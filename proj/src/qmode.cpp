#include "qtorus/qmode.hpp"

#include <atomic>
#include <mutex>

namespace qtorus {

namespace {

std::atomic<const LPoly*> g_phi[kMaxRootOrder + 1] = {};
std::mutex g_phi_mutex;

// Phi_d = (q^d - 1) / prod_{e | d, e < d} Phi_e, computed recursively.
LPoly compute_phi(int32_t d) {
    LPoly num = LPoly::monomial(d, 1) - LPoly::one();
    for (int32_t e = 1; e < d; ++e) {
        if (d % e != 0) continue;
        const LPoly* cached = g_phi[e].load(std::memory_order_acquire);
        LPoly phi_e = cached ? *cached : compute_phi(e);
        num = num.divexact(phi_e);
    }
    return num;
}

const LPoly& intern_phi(int32_t d) {
    const LPoly* p = g_phi[d].load(std::memory_order_acquire);
    if (p) return *p;
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    p = g_phi[d].load(std::memory_order_acquire);
    if (p) return *p;
    const LPoly* fresh = new LPoly(compute_phi(d)); // interned for process lifetime
    g_phi[d].store(fresh, std::memory_order_release);
    return *fresh;
}

} // namespace

QMode QMode::root_of_unity(int32_t d) {
    if (d < 1 || d > kMaxRootOrder)
        throw ConfigError("root-of-unity order must be in [1, " +
                          std::to_string(kMaxRootOrder) + "], got " + std::to_string(d));
    QMode m(d);
    intern_phi(d); // warm the registry so hot paths never take the lock
    return m;
}

const LPoly& QMode::phi() const {
    if (code_ == 0) throw Error("phi() requested in generic mode");
    return intern_phi(code_);
}

std::string QMode::str() const {
    return code_ == 0 ? "generic" : "root:" + std::to_string(code_);
}

QMode QMode::parse(const std::string& s) {
    if (s == "generic") return generic();
    if (s.rfind("root:", 0) == 0) {
        try {
            size_t pos = 0;
            int d = std::stoi(s.substr(5), &pos);
            if (pos == s.size() - 5) return root_of_unity(d);
        } catch (const std::logic_error&) {
            // fall through to ParseError
        }
    }
    throw ParseError("bad q-mode '" + s + "' (expected 'generic' or 'root:<d>')");
}

} // namespace qtorus
