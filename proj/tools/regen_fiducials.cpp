// Regenerates the fiducial registry file from the built-in entries.
#include <cstdio>

#include "micbench/io.hpp"

using namespace micbench;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: regen_fiducials <output.json>\n");
        return 2;
    }
    Json reg = Json::array();
    for (const Eigen::Index d : known_fiducial_dims())
        reg.push_back(fiducial_to_json(known_fiducial(d)));
    write_text_file(argv[1], reg.dump(2) + "\n");
    return 0;
}
