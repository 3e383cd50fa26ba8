// Writes the golden files under tests/golden. Run manually after an
// intentional change to the rendering or to the fixture scenes, then review
// the diffs before committing.

#include <cstdio>
#include <string>

#include "scene_fixtures.hpp"

using namespace rayvor;

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "tests/golden";
  const LabelRaster labels = fixtures::disconnected_labels();
  emit_pgm(labels, dir + "/labels_disconnected.pgm");
  emit_svg(fixtures::hyperbola_figure(), dir + "/figure_hyperbola.svg");
  emit_svg(fixtures::bisector_figure(labels), dir + "/figure_bisector.svg");
  std::printf("wrote golden files to %s\n", dir.c_str());
  return 0;
}
