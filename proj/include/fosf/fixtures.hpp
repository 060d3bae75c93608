#pragma once

#include <string>

namespace fosf::fixtures {

// Small movie taxonomy: slasher is fully a horror and half a thriller.
inline const std::string& movie_ontology() {
  static const std::string text = R"(sort movie
sort thriller
sort horror
sort slasher
sort person
sort director
sort string
feature directed_by
feature title
feature genre
edge slasher thriller 0.5
edge slasher horror 1
edge horror movie 1
edge thriller movie 1
edge director person 1
edge bot director 1
edge bot slasher 1
edge bot string 1
edge string top 1
edge person top 1
edge movie top 1
)";
  return text;
}

// Two films, their directors and titles; every other feature goes to null.
inline const std::string& movie_interpretation() {
  static const std::string text = R"(elem psycho
elem halloween
elem hitchcock
elem carpenter
elem Psycho
elem Halloween
elem null
deg thriller halloween 0.5
deg horror halloween 1
deg slasher halloween 1
deg thriller psycho 1
deg horror psycho 1
deg slasher psycho 0.7
deg movie psycho 1
deg movie halloween 1
deg string Psycho 1
deg string Halloween 1
deg person hitchcock 1
deg person carpenter 1
deg director hitchcock 1
deg director carpenter 1
fun directed_by * null
fun title * null
fun genre * null
fun directed_by psycho hitchcock
fun directed_by halloween carpenter
fun title psycho Psycho
fun title halloween Halloween
)";
  return text;
}

}  // namespace fosf::fixtures
