#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "imsim/io.hpp"

using namespace imsim;

TEST_CASE("shortest round-trip number formatting") {
    for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02e23, 7.9e-15, 123456.789}) {
        std::string s = format_number(v);
        CHECK(std::stod(s) == v); // bit-exact round trip
    }
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-1.0) == "-1");
}

TEST_CASE("CSV field quoting") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("with,comma") == "\"with,comma\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("CSV writer emits CRLF records with a header") {
    std::string path = "test_io_tmp.csv";
    write_csv(path, {"a", "b"}, {{"1", "x,y"}, {"2", "z"}});
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "a,b\r\n1,\"x,y\"\r\n2,z\r\n");
    std::remove(path.c_str());
    CHECK_THROWS(write_csv(path, {"a", "b"}, {{"only-one"}}));
}

TEST_CASE("output file naming") {
    std::string name = timestamp_name("run", "csv");
    // run-YYYYMMDDTHHMMSSZ.csv
    CHECK(name.size() == 4 + 16 + 4);
    CHECK(name.substr(0, 4) == "run-");
    CHECK(name.substr(name.size() - 5) == "Z.csv");
    CHECK(name[12] == 'T');
}
