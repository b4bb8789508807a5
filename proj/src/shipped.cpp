#include <mutex>
#include <map>

#include "cohgate/complex.hpp"
#include "cohgate/errors.hpp"
#include "cohgate/homology.hpp"

namespace cohgate {

namespace {

struct Expected {
    std::vector<int64_t> betti2;
    int64_t h1_torsion;  // 0 = none expected
};

const std::map<std::string, Expected>& expected_data() {
    static const std::map<std::string, Expected> m = {
        {"rp2", {{1, 1, 1}, 2}},
        {"rp3", {{1, 1, 1, 1}, 2}},
        {"cp2", {{1, 0, 1, 0, 1}, 0}},
        {"klein", {{1, 2, 1}, 2}},
        {"circle", {{1, 1}, 0}},
    };
    return m;
}

ComplexPtr load_checked(const std::string& name) {
    auto C = load_complex_json(data_dir() + "/" + name + ".json");
    auto rep = validate(*C);
    if (!rep.ok) throw InputError("shipped complex " + name + " failed validation");
    const auto& e = expected_data().at(name);
    if (betti_mod_p(*C, 2) != e.betti2) throw InputError("shipped complex " + name + " has unexpected Z2 Betti numbers");
    auto H = integer_homology(*C);
    bool torsion_ok = e.h1_torsion == 0 ? H[1].torsion.empty()
                                        : (H[1].torsion.size() == 1 && H[1].torsion[0] == e.h1_torsion);
    if (!torsion_ok) throw InputError("shipped complex " + name + " has unexpected H_1 torsion");
    if (name == "cp2") {
        // complex orientation: the H^2 generator squares to +1
        auto B = cohomology_basis(C, 2, 8);
        int64_t w2 = ((pairing_matrix(C, {B, B}).at({0, 0}) % 8) + 8) % 8;
        if (w2 == 7) {
            auto o = *C->orientation;
            for (auto& x : o) x = -x;
            C = with_orientation(C, o);
        } else if (w2 != 1) {
            throw InputError("shipped complex cp2 has a non-unimodular intersection form");
        }
    }
    return C;
}

ComplexPtr iterated_torus(int n) {
    ComplexPtr T = circle(3);
    for (int i = 1; i < n; ++i) {
        auto P = product(T, circle(3));
        auto Q = std::make_shared<CellComplex>(*P);
        Q->name = "T" + std::to_string(i + 1);
        T = Q;
    }
    return T;
}

ComplexPtr make(const std::string& name) {
    if (expected_data().count(name)) return load_checked(name);
    if (name.size() == 2 && (name[0] == 't' || name[0] == 'T') && name[1] >= '1' && name[1] <= '6')
        return iterated_torus(name[1] - '0');
    if (name == "cp2xcp2") {
        auto cp2 = shipped_complex("cp2");
        return product(cp2, cp2);
    }
    if (name.rfind("cubic:", 0) == 0) {
        auto rest = name.substr(6);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw InputError("cubic complexes are named cubic:n:L");
        try {
            return torus_lattice(std::stoi(rest.substr(0, colon)), std::stoi(rest.substr(colon + 1)));
        } catch (const std::invalid_argument&) {
            throw InputError("cubic complexes are named cubic:n:L");
        }
    }
    throw InputError("unknown complex '" + name + "'");
}

}  // namespace

ComplexPtr shipped_complex(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, ComplexPtr> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(name); it != cache.end()) return it->second;
    }
    ComplexPtr C = make(name);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(name, C).first->second;
}

}  // namespace cohgate
