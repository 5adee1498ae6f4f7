#include <doctest.h>

#include "extlin/errors.hpp"
#include "extlin/random.hpp"
#include "extlin/serialize.hpp"

using namespace extlin;
using io::json;

namespace {

std::string schema_path(const json& j, void (*read)(const json&)) {
    try {
        read(j);
    } catch (const SchemaError& e) {
        return e.path();
    }
    return "";
}

std::string validation_message(const json& j, void (*read)(const json&)) {
    try {
        read(j);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

void read_groupoid(const json& j) { io::groupoid_from_json(j); }
void read_locsys(const json& j) { io::locsys_from_json(j); }
void read_complex(const json& j) { io::complex_from_json(j); }

bool same_shape(const FinGroupoid& a, const FinGroupoid& b) { return a == b; }

} // namespace

TEST_CASE("scalars and matrices") {
    CHECK(io::to_json(Scalar(Rational(-3, 4))) == "-3/4");
    CHECK(io::scalar_from_json(json("1/2+3i")) == Scalar(Rational(1, 2), Rational(3)));
    CHECK(io::scalar_from_json(json(5)) == Scalar(5));
    CHECK_THROWS_AS(io::scalar_from_json(json(0.5)), SchemaError);
    CHECK_THROWS_AS(io::scalar_from_json(json("1/0")), SchemaError);

    Matrix m(2, 3);
    m(0, 1) = Scalar(Rational(2, 3));
    m(1, 2) = Scalar(Rational(0), Rational(-1));
    json j = io::to_json(m);
    CHECK(j == json::parse(R"([["0","2/3","0"],["0","0","0-1i"]])"));
    CHECK(io::matrix_from_json(j, 2, 3) == m);
    try {
        io::matrix_from_json(json::parse(R"([["1","x"]])"), 1, 2, "$.t");
        FAIL("expected a schema error");
    } catch (const SchemaError& e) {
        CHECK(e.path() == "$.t[0][1]");
    }
    CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"([["1"]])"), 1, 2), SchemaError);
}

TEST_CASE("groupoid forms and their sugar") {
    json z2 = json::parse(R"({"group":{"elements":["0","1"],"table":[["0","1"],["1","0"]]}})");
    Grpd b = io::groupoid_from_json(z2);
    CHECK(same_shape(*b, *delooping(FiniteGroup::cyclic(2))));
    CHECK(io::groupoid_from_json(json::parse(R"({"codiscrete":["a","b"]})"))->num_morphisms() == 4);
    CHECK(io::groupoid_from_json(json::parse(R"({"discrete":["a","b","c"]})"))->is_discrete());
    json act = json::parse(
        R"({"action":{"group":{"elements":["e","s"],"table":[[0,1],[1,0]]},"set":["u","v"],"map":[["u","v"],["v","u"]]}})");
    Grpd a = io::groupoid_from_json(act);
    CHECK(a->num_objects() == 2);
    CHECK(a->num_morphisms() == 4);

    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        Grpd g = gen::groupoid(rng, 3, 6);
        json j = io::to_json(*g);
        CHECK(same_shape(*io::groupoid_from_json(j), *g));
        CHECK(io::detect_kind(j) == "groupoid");
    }
}

TEST_CASE("a corrupted composition entry is reported with its triple") {
    Grpd s3 = delooping(FiniteGroup::symmetric3());
    json j = io::to_json(*s3);
    // Point one composite at a different element.
    json& entry = j["compose"][7];
    std::string g = entry[0], f = entry[1], gf = entry[2];
    entry[2] = gf == "e" ? s3->morphism_id(1) : "e";
    std::string msg = validation_message(j, read_groupoid);
    CHECK(msg.rfind("$: groupoid law:", 0) == 0);
    CHECK(msg.find("(") != std::string::npos);

    json missing = io::to_json(*s3);
    missing["compose"].erase(3);
    CHECK(validation_message(missing, read_groupoid).find("is missing") != std::string::npos);

    json bad = io::to_json(*s3);
    bad["compose"][2][1] = "nosuch";
    CHECK(schema_path(bad, read_groupoid) == "$.compose[2][1]");
    json no_ids = io::to_json(*s3);
    no_ids.erase("identities");
    CHECK(schema_path(no_ids, read_groupoid) == "$");
}

TEST_CASE("local systems and morphisms round trip") {
    Rng rng(2);
    for (int trial = 0; trial < 15; ++trial) {
        Grpd x = gen::groupoid(rng, 3, 6);
        LocalSystem v = gen::local_system(rng, x, 3);
        json j = io::to_json(v);
        CHECK(io::detect_kind(j) == "local_system");
        LocalSystem back = io::locsys_from_json(j);
        CHECK(back == v);
        CHECK(io::to_json(back) == j);

        Grpd y = gen::groupoid(rng, 2, 6);
        LocalSystem w = gen::local_system(rng, y, 2);
        GroupoidFunctor f = gen::functor(rng, x, y);
        LocalSystem fw = pullback(f, w);
        LocMorphism phi = gen::loc_morphism(rng, fw, w, f);
        json pj = io::to_json(phi);
        CHECK(io::detect_kind(pj) == "loc_morphism");
        LocMorphism phi2 = io::loc_morphism_from_json(pj);
        for (std::size_t o = 0; o < x->num_objects(); ++o)
            CHECK(phi2.component(o).matrix() == phi.component(o).matrix());
        CHECK(phi2.base_map().object_map() == f.object_map());
        CHECK(phi2.base_map().morphism_map() == f.morphism_map());
    }
}

TEST_CASE("local system schema errors carry paths") {
    json j = json::parse(R"({
      "base": {"group": {"elements": ["e","s"], "table": [["e","s"],["s","e"]]}},
      "fibers": {"*": {"dim": 2}},
      "transport": {"s": [["0","1"],["1","0"]]}
    })");
    LocalSystem v = io::locsys_from_json(j);
    CHECK(v.fiber(0).dim() == 2);

    json short_row = j;
    short_row["transport"]["s"][1] = json::array({"1"});
    CHECK(schema_path(short_row, read_locsys) == "$.transport.s[1]");
    json missing = j;
    missing["transport"].erase("s");
    CHECK(schema_path(missing, read_locsys) == "$.transport");
    json stray = j;
    stray["fibers"]["q"] = json::parse(R"({"dim":1})");
    CHECK(schema_path(stray, read_locsys) == "$.fibers.q");
    json bad_dim = j;
    bad_dim["fibers"]["*"]["dim"] = -1;
    CHECK(schema_path(bad_dim, read_locsys) == "$.fibers.*.dim");
    // s o s = e needs the transport to square to the identity.
    json not_functor = j;
    not_functor["transport"]["s"] = json::parse(R"([["2","0"],["0","1"]])");
    CHECK(validation_message(not_functor, read_locsys).rfind("$: ", 0) == 0);
}

TEST_CASE("chain complexes, maps and simplicial objects") {
    ChainComplex s2 = sphere(2);
    json j = io::to_json(s2);
    CHECK(j["support"] == json::array({2}));
    CHECK(io::complex_from_json(j) == s2);
    CHECK(io::to_json(homology(io::complex_from_json(j))) == json::parse(R"({"2":1})"));

    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        ChainComplex c = gen::complex(rng, -1, 2);
        CHECK(io::complex_from_json(io::to_json(c)) == c);
        ChainComplex d = gen::complex(rng, -1, 2);
        ChainMap f = gen::chain_map(rng, c, d);
        json fj = io::to_json(f);
        CHECK(io::detect_kind(fj) == "chain_map");
        CHECK(io::chain_map_from_json(fj) == f);
    }

    json dd = json::parse(R"({"components":{"0":{"dim":1},"1":{"dim":1},"2":{"dim":1}},
                              "differentials":{"1":[["1"]],"2":[["1"]]}})");
    CHECK(validation_message(dd, read_complex).find("degree 2") != std::string::npos);
    json wrong_support = io::to_json(s2);
    wrong_support["support"] = json::array({1});
    CHECK(schema_path(wrong_support, read_complex) == "$.support");
    json bad_key = io::to_json(s2);
    bad_key["components"]["two"] = json::parse(R"({"dim":1})");
    CHECK(schema_path(bad_key, read_complex) == "$.components");

    TruncatedSimplicialComplex cs = constant_simplicial(sphere(0), 2);
    json sj = io::to_json(cs);
    CHECK(io::detect_kind(sj) == "simplicial");
    TruncatedSimplicialComplex back = io::simplicial_from_json(sj);
    CHECK(totalize(back) == totalize(cs));
    json sugar = {{"constant", io::to_json(sphere(0))}, {"truncation", 2}};
    CHECK(totalize(io::simplicial_from_json(sugar)) == totalize(cs));
}

TEST_CASE("dg local systems and morphisms") {
    Rng rng(4);
    for (int trial = 0; trial < 8; ++trial) {
        Grpd x = gen::groupoid(rng, 2, 4);
        DgLocalSystem v = gen::dg_local_system(rng, x);
        json j = io::to_json(v);
        CHECK(io::detect_kind(j) == "dg_system");
        CHECK(io::dg_from_json(j) == v);
        json id = {{"identity", j}};
        CHECK(io::detect_kind(id) == "dg_morphism");
        CHECK(classify(io::dg_morphism_from_json(id)) == Classification{true, true, true});
    }
    DgLocMorphism w = gen::dg_weq(rng);
    json wj = io::to_json(w);
    CHECK(io::detect_kind(wj) == "dg_morphism");
    DgLocMorphism back = io::dg_morphism_from_json(wj);
    CHECK(classify(back) == classify(w));
}

TEST_CASE("qubit report JSON") {
    json r = io::to_json(qubit_demo());
    CHECK(r["demo"] == "qubit");
    CHECK(r["verified"] == true);
    CHECK(r["state"]["q0"] == "3/5");
    CHECK(r["state"]["q1"] == "0+4/5i");
    CHECK(r["measurement"][0]["projection"] == json::parse(R"([["1","0"]])"));
    CHECK(r["preparation"][1]["column"] == json::parse(R"([["0"],["1"]])"));
    for (const auto& c : r["checks"])
        CHECK(c["ok"] == true);
}

TEST_CASE("unrecognized documents") {
    CHECK(io::detect_kind(json::parse(R"({"hello":1})")).empty());
    CHECK_THROWS_AS(io::validate_document(json::parse("[1,2]")), SchemaError);
}
