#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "discopt/instance.hpp"
#include "discopt/io.hpp"
#include "support/oracles.hpp"

using namespace discopt;

namespace {

ProblemInstance k4_identity() {
    ProblemInstance inst;
    inst.n = 4;
    inst.kind = ProblemKind::perfect_matching;
    AgentSpec agent;
    agent.id = 0;
    agent.discount = identity_curve(100.0);
    agent.costs.assign(6, 5.0);
    agent.costs[edge_id(4, 0, 1)] = 1.0;
    agent.costs[edge_id(4, 2, 3)] = 1.0;
    inst.agents.push_back(agent);
    return inst;
}

std::filesystem::path temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "discopt_instance_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("edge id round trip") {
    for (int n : {2, 3, 5, 8}) {
        int id = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                CHECK(edge_id(n, u, v) == id);
                CHECK(edge_id(n, v, u) == id);
                auto [a, b] = edge_vertices(n, id);
                CHECK(a == u);
                CHECK(b == v);
                ++id;
            }
        CHECK(id == complete_edge_count(n));
    }
}

TEST_CASE("total price") {
    ProblemInstance inst = k4_identity();
    Allocation empty;
    CHECK(total_price(inst, empty) == 0.0);

    Allocation two;
    two.assignment[edge_id(4, 0, 1)] = 0;
    two.assignment[edge_id(4, 2, 3)] = 0;
    CHECK(total_price(inst, two) == 2.0);

    // flat segment: curve (0,0)-(10,10) then slope 0, bundle cost 25 -> 10
    ProblemInstance flat = inst;
    flat.agents[0].discount.breakpoints = {{0.0, 0.0}, {10.0, 10.0}};
    flat.agents[0].discount.final_slope = 0.0;
    flat.agents[0].costs.assign(6, 25.0);
    Allocation one;
    one.assignment[edge_id(4, 0, 1)] = 0;
    CHECK(total_price(flat, one) == 10.0);

    Allocation bad_edge;
    bad_edge.assignment[99] = 0;
    CHECK_THROWS_AS(total_price(inst, bad_edge), ValidationError);
    Allocation bad_agent;
    bad_agent.assignment[0] = 7;
    CHECK_THROWS_AS(total_price(inst, bad_agent), ValidationError);
}

TEST_CASE("validate_solution on the named examples") {
    ProblemInstance inst = k4_identity();
    Allocation pm;
    pm.assignment[edge_id(4, 0, 1)] = 0;
    pm.assignment[edge_id(4, 2, 3)] = 0;
    CHECK(validate_solution(inst, pm));

    Allocation broken;
    broken.assignment[edge_id(4, 0, 1)] = 0;
    broken.assignment[edge_id(4, 1, 2)] = 0;
    CHECK_FALSE(validate_solution(inst, broken));

    ProblemInstance tree = inst;
    tree.kind = ProblemKind::spanning_tree;
    Allocation path;
    path.assignment[edge_id(4, 0, 1)] = 0;
    path.assignment[edge_id(4, 1, 2)] = 0;
    path.assignment[edge_id(4, 2, 3)] = 0;
    CHECK(validate_solution(tree, path));
}

TEST_CASE("a path with a stray cycle is not an s-t path") {
    ProblemInstance inst;
    inst.n = 5;
    inst.kind = ProblemKind::shortest_path;
    inst.s = 0;
    inst.t = 1;
    AgentSpec agent;
    agent.id = 0;
    agent.discount = identity_curve(10.0);
    agent.costs.assign(static_cast<std::size_t>(complete_edge_count(5)), 1.0);
    inst.agents.push_back(agent);

    Allocation direct;
    direct.assignment[edge_id(5, 0, 1)] = 0;
    CHECK(validate_solution(inst, direct));

    Allocation with_cycle = direct; // degrees and edge counts still line up
    with_cycle.assignment[edge_id(5, 2, 3)] = 0;
    with_cycle.assignment[edge_id(5, 3, 4)] = 0;
    with_cycle.assignment[edge_id(5, 2, 4)] = 0;
    CHECK_FALSE(validate_solution(inst, with_cycle));
    CHECK_FALSE(testsupport::naive_is_structure(inst, with_cycle));
}

TEST_CASE("validate_solution agrees with an independent checker") {
    std::mt19937_64 eng(99);
    for (auto kind : {ProblemKind::edge_cover, ProblemKind::spanning_tree,
                      ProblemKind::perfect_matching, ProblemKind::shortest_path}) {
        for (int trial = 0; trial < 1000; ++trial) {
            int n = 2 + int(eng() % 7);
            if (kind == ProblemKind::perfect_matching && n % 2) ++n;
            RandomSpec spec;
            spec.seed = eng();
            spec.n = n;
            spec.k = 2;
            spec.kind = kind;
            ProblemInstance inst = random_instance(spec);
            Allocation alloc;
            for (int e = 0; e < complete_edge_count(n); ++e)
                if (eng() % 3 == 0) alloc.assignment[e] = int(eng() % 2);
            REQUIRE(validate_solution(inst, alloc) == testsupport::naive_is_structure(inst, alloc));
        }
    }
}

TEST_CASE("random instances are deterministic and valid") {
    RandomSpec spec;
    spec.seed = 1;
    spec.n = 4;
    spec.k = 1;
    spec.kind = ProblemKind::perfect_matching;
    ProblemInstance a = random_instance(spec);
    ProblemInstance b = random_instance(spec);
    CHECK(instance_to_json(a) == instance_to_json(b));

    RandomSpec odd = spec;
    odd.n = 5;
    odd.k = 2;
    CHECK_THROWS_AS(random_instance(odd), DomainError);

    RandomSpec tree;
    tree.seed = 2;
    tree.n = 6;
    tree.k = 3;
    tree.kind = ProblemKind::spanning_tree;
    tree.curves = CurveFamily::mixed;
    ProblemInstance inst = random_instance(tree);
    for (const auto& agent : inst.agents)
        CHECK(validate(agent.discount).ok);

    CHECK_THROWS_AS(random_instance(RandomSpec{.seed = 0, .n = 1, .k = 1}), DomainError);
    CHECK_THROWS_AS(random_instance(RandomSpec{.seed = 0, .n = 4, .k = 0}), DomainError);
    CHECK_THROWS_AS(random_instance(RandomSpec{.seed = 0, .n = kMaxVertices + 1, .k = 1}), DomainError);

    RandomSpec loop;
    loop.seed = 3;
    loop.n = 4;
    loop.k = 1;
    loop.kind = ProblemKind::shortest_path;
    loop.s = 2;
    loop.t = 2;
    CHECK_THROWS_AS(random_instance(loop), DomainError);
    loop.t = 9;
    CHECK_THROWS_AS(random_instance(loop), DomainError);
}

TEST_CASE("instance files round trip bit-exactly") {
    for (auto kind : {ProblemKind::edge_cover, ProblemKind::shortest_path, ProblemKind::reverse_auction}) {
        RandomSpec spec;
        spec.seed = 7;
        spec.n = 5;
        spec.k = 2;
        spec.kind = kind;
        spec.curves = CurveFamily::mixed;
        ProblemInstance inst = random_instance(spec);
        auto path = temp_file("roundtrip_" + kind_name(kind) + ".json");
        write_instance(path.string(), inst);
        ProblemInstance back = read_instance(path.string());
        CHECK(instance_to_json(back) == instance_to_json(inst));
        for (std::size_t a = 0; a < inst.agents.size(); ++a)
            for (std::size_t e = 0; e < inst.agents[a].costs.size(); ++e)
                REQUIRE(back.agents[a].costs[e] == inst.agents[a].costs[e]);
    }
}

TEST_CASE("allocation files round trip") {
    ProblemInstance inst = k4_identity();
    Allocation pm;
    pm.assignment[edge_id(4, 0, 1)] = 0;
    pm.assignment[edge_id(4, 2, 3)] = 0;
    auto path = temp_file("alloc.json");
    write_allocation(path.string(), inst, pm);
    AllocationFile back = read_allocation(path.string(), inst);
    CHECK(back.allocation == pm);
    CHECK(back.price == 2.0);
}

TEST_CASE("parse errors carry context") {
    auto path = temp_file("broken.json");
    {
        std::ofstream out(path);
        out << R"({"n": 3, "kind": "edge_cover", "agents": [{"id": 0,
                   "discount": {"breakpoints": [[0,0],[10,10]], "final_slope": 1.0},
                   "costs": {"0-1": 1.0, "0-2": 2.0}}]})";
    }
    try {
        read_instance(path.string());
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("1-2") != std::string::npos); // names the missing edge
    }

    auto path2 = temp_file("unknown_kind.json");
    {
        std::ofstream out(path2);
        out << R"({"n": 2, "kind": "widest_path", "agents": []})";
    }
    CHECK_THROWS_AS(read_instance(path2.string()), ParseError);

    auto path3 = temp_file("bad_curve.json");
    {
        std::ofstream out(path3);
        out << R"({"n": 2, "kind": "edge_cover", "agents": [{"id": 0,
                   "discount": {"breakpoints": [[0,0],[10,5]], "final_slope": 0.9},
                   "costs": {"0-1": 1.0}}]})";
    }
    CHECK_THROWS_AS(read_instance(path3.string()), ParseError);

    auto path4 = temp_file("negative_cost.json");
    {
        std::ofstream out(path4);
        out << R"({"n": 2, "kind": "edge_cover", "agents": [{"id": 0,
                   "discount": {"breakpoints": [[0,0],[10,10]], "final_slope": 1.0},
                   "costs": {"0-1": -2.0}}]})";
    }
    try {
        read_instance(path4.string());
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("negative") != std::string::npos);
    }
}

TEST_CASE("price is monotone under bundle shrinking and subadditive under merging") {
    std::mt19937_64 eng(123);
    for (int trial = 0; trial < 300; ++trial) {
        RandomSpec spec;
        spec.seed = eng();
        spec.n = 5;
        spec.k = 2;
        spec.kind = ProblemKind::edge_cover;
        spec.curves = CurveFamily::mixed;
        ProblemInstance inst = random_instance(spec);
        Allocation alloc;
        for (int e = 0; e < complete_edge_count(5); ++e)
            if (eng() % 2) alloc.assignment[e] = int(eng() % 2);
        if (alloc.assignment.empty()) continue;
        double price = total_price(inst, alloc);

        Allocation smaller = alloc;
        auto it = smaller.assignment.begin();
        std::advance(it, static_cast<long>(eng() % smaller.assignment.size()));
        smaller.assignment.erase(it);
        CHECK(total_price(inst, smaller) <= price + 1e-12);

        // merging both bundles onto one agent costs at most the split prices
        Allocation merged = alloc;
        for (auto& [e, agent] : merged.assignment) agent = 0;
        Allocation only0, only1;
        for (auto& [e, agent] : alloc.assignment)
            (agent == 0 ? only0 : only1).assignment[e] = 0;
        CHECK(total_price(inst, merged) <=
              total_price(inst, only0) + total_price(inst, only1) + 1e-9);
    }
}
