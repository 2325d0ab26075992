// Writes the bundled example corpus into a directory (default: data).
#include "qg/category.hpp"
#include "qg/cbnorm.hpp"
#include "qg/doubles.hpp"
#include "qg/examples.hpp"
#include "qg/freeprod.hpp"
#include "qg/io.hpp"

#include <filesystem>
#include <iostream>

using namespace qg;

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(dir);
    auto put = [&](const std::string& name, const io::json& j) {
        io::write_file((dir / name).string(), j);
        std::cout << (dir / name).string() << "\n";
    };
    try {
        const FiniteGroup z2 = cyclic_group(2), z3 = cyclic_group(3), s3 = symmetric_group3();
        put("c_z2.qg", io::to_json(function_algebra(z2)));
        put("c_z3.qg", io::to_json(function_algebra(z3)));
        put("c_s3.qg", io::to_json(function_algebra(s3)));
        put("cz2.qg", io::to_json(group_algebra(z2)));
        put("cz3.qg", io::to_json(group_algebra(z3)));
        put("cs3.qg", io::to_json(group_algebra(s3)));
        put("kp.qg", io::to_json(kac_paljutkin()));
        put("trivial.qg", io::to_json(trivial_hopf()));

        // the Z2-dual multiplier with values (1, 3)
        Engine gz2 = build_engine(group_algebra(z2));
        EngineTable ez2 = bridge(gz2);
        FinSupp a13;
        a13.blocks[0] = Mat::Constant(1, 1, 1.0);
        a13.blocks[1] = Mat::Constant(1, 1, 3.0);
        BlockMap m13 = theta_block_map(ez2, a13);
        m13.name = "Z2 multiplier (1,3)";
        put("z2_mult_1_3.map", io::to_json(m13));
        put("transpose_m2.map", io::to_json(transpose_map(2)));

        Engine gs3 = build_engine(group_algebra(s3));
        EngineTable es3 = bridge(gs3);
        put("s3.table", io::to_json(es3.table));
        FinSupp a;
        for (int l = 0; l < es3.table.size(); ++l)
            a.blocks[l] = random_matrix(es3.table.dims[l], es3.table.dims[l], 17 + static_cast<unsigned long>(l));
        put("s3_a.elem", io::to_json(a));
        PolElement x;
        for (int l = 0; l < es3.table.size(); ++l)
            x.coeffs[l] = random_matrix(es3.table.dims[l], es3.table.dims[l], 31 + static_cast<unsigned long>(l));
        put("s3_x.pol", io::to_json(x));

        put("rep_z2.ring", io::to_json(rep_cyclic(2)));
        put("rep_s3.ring", io::to_json(rep_s3()));
        put("tl6_q1.ring", io::to_json(temperley_lieb(6, 1.0)));
        put("tl6_q08.ring", io::to_json(temperley_lieb(6, 0.8)));
        put("tl4_root.ring", io::to_json(temperley_lieb(4, 1.0, true)));
        put("s3_theta.vec", io::vector_to_json({1.0, cd(0.5, 0.5), -0.25}));
        put("s3_omega.vec", io::vector_to_json({0.3, cd(-1.0, 0.2), 2.0}));
        put("s3_f.vec", io::vector_to_json({1.0, 2.0, cd(0.0, 1.0)}));
        put("s3_g.vec", io::vector_to_json({cd(0.5, -0.5), 1.0, 1.0}));

        DrinfeldDouble dz2 = drinfeld_double(function_algebra(z2), false);
        put("d_z2.match", io::to_json(dz2.d.match));
        const int n = 9;
        put("c_z3_x_cz3.match", io::to_json(Matching{function_algebra(z3), group_algebra(z3), Mat::Identity(n, n)}));

        put("z2_z2.fp", io::to_json(FreeProductTable{{group_table(z2), group_table(z2)}}));
        put("s3_z3_z2.fp", io::to_json(FreeProductTable{{es3.table, group_table(z3), group_table(z2)}}));
        AlternatingWord w1{{{0, 2}, {1, 1}}}, w2{{{1, 2}, {0, 2}}};
        put("s3_z3_z2_pair.words", io::words_to_json({w1, w2}));
    } catch (const Error& e) {
        std::cerr << "make_corpus: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
