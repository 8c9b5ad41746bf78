#include "doctest.h"

#include "pso/errors.hpp"
#include "pso/taxonomy.hpp"

using pso::Taxonomy;
namespace cls = pso::cls;

TEST_CASE("defaults root at Entity and cover the built-in tree") {
    Taxonomy tax = Taxonomy::defaults();

    CHECK(tax.contains(cls::Entity));
    CHECK(tax.parent_of(cls::Entity).empty());

    CHECK(tax.parent_of(cls::StructuralBehavior) == cls::PhysicalBehavior);
    CHECK(tax.parent_of(cls::PhysicalBehavior) == cls::Process);
    CHECK(tax.parent_of(cls::Process) == cls::Occurrent);
    CHECK(tax.parent_of(cls::Occurrent) == cls::Entity);

    CHECK(tax.parent_of(cls::FiatObjectSurface) == cls::FiatObjectPart);
    CHECK(tax.parent_of(cls::MaterialSubstance) == cls::MaterialEntity);
    CHECK(tax.parent_of(cls::Site) == cls::ImmaterialEntity);
    CHECK(tax.parent_of(cls::Displacement) == cls::PhysicalProperty);
    CHECK(tax.parent_of(cls::Density) == cls::MaterialProperty);
    CHECK(tax.parent_of(cls::Contact) == cls::RelationalQuality);
    CHECK(tax.parent_of(cls::Mesh) == cls::GeometricModel);
    CHECK(tax.parent_of(cls::Domain) == cls::InformationContentEntity);

    CHECK(tax.user_classes().empty());
    CHECK(tax.all_classes().size() >= 50);
    for (const std::string& name : tax.all_classes()) {
        CHECK(tax.is_builtin(name));
    }
}

TEST_CASE("is_subclass_of is reflexive and follows parent chains") {
    Taxonomy tax = Taxonomy::defaults();

    CHECK(tax.is_subclass_of(cls::Temperature, cls::Temperature));
    CHECK(tax.is_subclass_of(cls::Temperature, cls::PhysicalProperty));
    CHECK(tax.is_subclass_of(cls::Temperature, cls::Quality));
    CHECK(tax.is_subclass_of(cls::Temperature, cls::Entity));
    CHECK_FALSE(tax.is_subclass_of(cls::Temperature, cls::MaterialProperty));
    CHECK_FALSE(tax.is_subclass_of(cls::PhysicalProperty, cls::Temperature));
    CHECK_FALSE(tax.is_subclass_of(cls::Object, cls::Occurrent));

    CHECK_THROWS_AS((void)tax.is_subclass_of("NoSuch", cls::Entity), pso::UnknownClass);
    CHECK_THROWS_AS((void)tax.is_subclass_of(cls::Entity, "NoSuch"), pso::UnknownClass);
    CHECK_THROWS_AS((void)tax.parent_of("NoSuch"), pso::UnknownClass);
}

TEST_CASE("add_class extends a copy and validates its arguments") {
    Taxonomy base = Taxonomy::defaults();
    Taxonomy extended = base.add_class("CastIron", cls::MaterialSubstance);

    CHECK(extended.contains("CastIron"));
    CHECK_FALSE(extended.is_builtin("CastIron"));
    CHECK(extended.is_subclass_of("CastIron", cls::MaterialEntity));
    CHECK(extended.user_classes() == std::vector<std::string>{"CastIron"});

    CHECK_FALSE(base.contains("CastIron"));

    CHECK_THROWS_AS(extended.add_class("CastIron", cls::Object), pso::DuplicateClass);
    CHECK_THROWS_AS(extended.add_class(cls::Object, cls::Entity), pso::DuplicateClass);
    CHECK_THROWS_AS(base.add_class("Oil", "NoSuchParent"), pso::UnknownParent);

    Taxonomy chained = extended.add_class("GrayCastIron", "CastIron");
    CHECK(chained.is_subclass_of("GrayCastIron", cls::MaterialSubstance));
    CHECK(chained.user_classes() == std::vector<std::string>{"CastIron", "GrayCastIron"});
}
