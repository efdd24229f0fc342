#pragma once
// Reserved vocabulary. Terms use the compact prefix:local IRI form that the
// rest of the project (and its example data) uses, e.g. <rdf:type>.

#include <string_view>

namespace semnet::vocab {

inline constexpr std::string_view kRdfType = "rdf:type";
inline constexpr std::string_view kRdfProperty = "rdf:Property";

inline constexpr std::string_view kRdfsClass = "rdfs:Class";
inline constexpr std::string_view kRdfsResource = "rdfs:Resource";
inline constexpr std::string_view kRdfsLiteral = "rdfs:Literal";
inline constexpr std::string_view kRdfsDatatype = "rdfs:Datatype";
inline constexpr std::string_view kRdfsDomain = "rdfs:domain";
inline constexpr std::string_view kRdfsRange = "rdfs:range";
inline constexpr std::string_view kRdfsSubClassOf = "rdfs:subClassOf";
inline constexpr std::string_view kRdfsSubPropertyOf = "rdfs:subPropertyOf";

inline constexpr std::string_view kOwlRestriction = "owl:Restriction";
inline constexpr std::string_view kOwlOnProperty = "owl:onProperty";
inline constexpr std::string_view kOwlMaxCardinality = "owl:maxCardinality";
inline constexpr std::string_view kOwlCardinality = "owl:cardinality";
inline constexpr std::string_view kOwlSameAs = "owl:sameAs";
inline constexpr std::string_view kOwlDifferentFrom = "owl:differentFrom";
inline constexpr std::string_view kOwlSymmetricProperty = "owl:SymmetricProperty";
inline constexpr std::string_view kOwlTransitiveProperty = "owl:TransitiveProperty";

inline constexpr std::string_view kNalFrequency = "nal:frequency";
inline constexpr std::string_view kNalConfidence = "nal:confidence";
// Product components are nal:_1, nal:_2, ...
inline constexpr std::string_view kNalComponentPrefix = "nal:_";

inline constexpr std::string_view kXsdFloat = "xsd:float";
inline constexpr std::string_view kXsdInt = "xsd:int";

}  // namespace semnet::vocab
