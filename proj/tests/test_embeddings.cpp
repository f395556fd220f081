#include <doctest.h>

#include <cstring>
#include <sstream>

#include "lccsem/embeddings.hpp"
#include "lccsem/error.hpp"
#include "support.hpp"

using namespace lccsem;

TEST_SUITE("embeddings") {
  TEST_CASE("toy space") {
    const EmbeddingSpace& toy = toy_space();
    CHECK(toy.size() == 13);
    CHECK(toy.dimension() == 6);
    CHECK(toy.basis_labels() ==
          std::vector<std::string>{"human", "painting", "army", "weapon", "marathon", "election"});
    CHECK(toy.vector("man") == std::vector<double>{2, 3, 4, 2, 4, 4});
    CHECK(toy.vector("run") == std::vector<double>{4, 0, 2, 1, 8, 7});
    CHECK(toy.vector("sword") == std::vector<double>{2, 3, 9, 2, 0, 0});
    CHECK(toy.vector("picture") == std::vector<double>{1, 20, 0, 1, 1, 1});
    CHECK_THROWS_AS(toy.vector("alice"), EmbeddingError);
  }

  TEST_CASE("text format") {
    std::istringstream in("a 1 0\nb 0 1\n");
    EmbeddingSpace s = load_space(in, SpaceFormat::Text);
    CHECK(s.dimension() == 2);
    CHECK(s.vector("a") == std::vector<double>{1, 0});
    std::istringstream header("dim=3\nbasis=x y z\nCat 1 2 3\n");
    EmbeddingSpace h = load_space(header, SpaceFormat::Text);
    CHECK(h.vector("cat") == std::vector<double>{1, 2, 3});
    CHECK(h.basis_labels().size() == 3);
  }

  TEST_CASE("text errors") {
    auto error = [](const std::string& text) -> std::string {
      std::istringstream in(text);
      try {
        load_space(in, SpaceFormat::Text);
      } catch (const EmbeddingError& e) {
        return e.what();
      }
      return "";
    };
    CHECK(error("a 1 2 3\nb 1 2 3 4\n").find("line 2") != std::string::npos);
    CHECK(error("dim=2\na 1 2 3\n").find("line 2") != std::string::npos);
    CHECK(error("a 1 x\n").find("line 1") != std::string::npos);
  }

  TEST_CASE("duplicates keep the last vector") {
    std::istringstream in("a 1 0\nA 0 1\n");
    std::vector<std::string> warnings;
    EmbeddingSpace s = load_space(in, SpaceFormat::Text, &warnings);
    CHECK(s.vector("a") == std::vector<double>{0, 1});
    CHECK(s.size() == 1);
    CHECK(warnings.size() == 1);
  }

  TEST_CASE("text round trip") {
    std::stringstream buf;
    save_space(buf, toy_space());
    CHECK(load_space(buf, SpaceFormat::Text) == toy_space());
    EmbeddingSpace r = random_space({"x", "y", "z"}, 5, 99);
    std::stringstream buf2;
    save_space(buf2, r);
    CHECK(load_space(buf2, SpaceFormat::Text) == r);
  }

  TEST_CASE("binary format") {
    std::stringstream buf;
    save_space_binary(buf, toy_space());
    std::string bytes = buf.str();
    CHECK(bytes.rfind("13 6\n", 0) == 0);
    CHECK(bytes.substr(5, 4) == "man ");
    float first = 0;
    std::memcpy(&first, bytes.data() + 9, 4);
    CHECK(first == 2.0f);
    EmbeddingSpace back = load_space(buf, SpaceFormat::Binary);
    CHECK(back.words() == toy_space().words());
    for (const auto& w : back.words()) CHECK(back.vector(w) == toy_space().vector(w));

    std::string raw = "1 2\nw ";
    float v[2] = {0.5f, -1.25f};
    raw.append(reinterpret_cast<const char*>(v), 8);
    std::istringstream in(raw);
    EmbeddingSpace s = load_space(in, SpaceFormat::Binary);
    CHECK(s.vector("w") == std::vector<double>{0.5, -1.25});
    std::istringstream truncated(raw.substr(0, raw.size() - 2));
    CHECK_THROWS_AS(load_space(truncated, SpaceFormat::Binary), EmbeddingError);
  }

  TEST_CASE("random spaces are reproducible") {
    CHECK(random_space({"a", "b"}, 4, 1) == random_space({"a", "b"}, 4, 1));
    CHECK_FALSE(random_space({"a", "b"}, 4, 1) == random_space({"a", "b"}, 4, 2));
    EmbeddingSpace r = random_space({"a"}, 50, 3);
    for (double x : r.vector("a")) {
      CHECK(x >= -1.0);
      CHECK(x < 1.0);
    }
  }

  TEST_CASE("synthetic space file") {
    EmbeddingSpace s = load_space_file(testing::data_path("synthetic_space.txt"), SpaceFormat::Text);
    CHECK(s.size() == 10);
    CHECK(s.dimension() == 4);
    CHECK_THROWS_AS(load_space_file("/nonexistent/space.txt", SpaceFormat::Text), EmbeddingError);
  }
}
