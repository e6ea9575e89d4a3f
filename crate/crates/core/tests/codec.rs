mod common;

use adaptlearn_core::model::{DeviceProfile, MediaSet, UserProfile};
use adaptlearn_core::ontology::{
    decode_acml, decode_program, encode_acml, encode_program, parse_catalog, parse_uda_ontology,
    serialize_catalog, serialize_uda_ontology, AcmlError, AcmlMessage, CodecError, MessageParameter,
    ParameterKind,
};
use adaptlearn_core::solver::plan_program;
use proptest::prelude::*;
use rand::Rng;

/// Remove the first `name="..."` attribute from `xml`.
fn drop_attribute(xml: &str, name: &str) -> Option<String> {
    let needle = format!(" {name}=\"");
    let start = xml.find(&needle)?;
    let value_end = xml[start + needle.len()..].find('"')? + start + needle.len() + 1;
    Some(format!("{}{}", &xml[..start], &xml[value_end..]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn uda_round_trip(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let device = common::random_device(&mut r);
        let user = common::random_user(&mut r, None);
        let xml = serialize_uda_ontology(&device, &user);
        prop_assert_eq!(parse_uda_ontology(&xml), Ok((device.clone(), user.clone())));
        prop_assert_eq!(serialize_uda_ontology(&device, &user), xml);
    }

    #[test]
    fn catalog_round_trip(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let catalog = common::random_catalog_sized(&mut r, 0..=8, 4, 500);
        let xml = serialize_catalog(&catalog);
        let (parsed, report) = parse_catalog(&xml).unwrap();
        prop_assert!(report.is_valid(), "{}", report);
        prop_assert_eq!(&parsed, &catalog);
        prop_assert_eq!(serialize_catalog(&parsed), xml);
    }

    #[test]
    fn program_round_trip(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let catalog = common::random_catalog_sized(&mut r, 1..=6, 3, 100);
        let device = DeviceProfile { id: "d".into(), max_bandwidth: 1e6, enabled: MediaSet::new(true, true, true) };
        let user = UserProfile::new("u", 1e5);
        let env = adaptlearn_core::model::SessionEnvironment::new(1e6);
        let target = catalog.subjects()[r.random_range(0..catalog.subjects().len())].id.clone();
        let plan = plan_program(&catalog, &device, &user, &env, &target).unwrap();
        let xml = encode_program(&plan.program);
        prop_assert_eq!(decode_program(&xml), Ok(plan.program));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn acml_round_trip(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let msg = common::random_message(&mut r);
        let xml = encode_acml(&msg);
        prop_assert_eq!(decode_acml(&xml), Ok(msg.clone()));
        prop_assert_eq!(encode_acml(&msg), xml);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn uda_rejects_missing_required_attribute(seed in any::<u64>(), pick in 0usize..6) {
        let mut r = common::rng(seed);
        let device = common::random_device(&mut r);
        let user = common::random_user(&mut r, None);
        let name = ["DId", "BMax", "VE", "AE", "TE", "UId"][pick];
        let xml = drop_attribute(&serialize_uda_ontology(&device, &user), name).unwrap();
        let err = parse_uda_ontology(&xml).unwrap_err();
        prop_assert_eq!(err.offending_name(), Some(name));
    }

    #[test]
    fn catalog_rejects_missing_required_attribute(seed in any::<u64>(), pick in 0usize..10) {
        let mut r = common::rng(seed);
        let catalog = common::random_catalog_sized(&mut r, 1..=4, 2, 50);
        let name = [
            "SubjId", "SubjName", "LObjId", "LObjName", "LObjSubject", "LObjLocation",
            "LObjVC", "LObjSize", "LObjDuration", "LObjTC",
        ][pick];
        let xml = serialize_catalog(&catalog);
        // the first SubjId belongs to a subject, never a prerequisite, as
        // subject 0 is always basic
        let broken = drop_attribute(&xml, name).unwrap();
        let err = parse_catalog(&broken).unwrap_err();
        prop_assert_eq!(err.offending_name(), Some(name));
    }

    #[test]
    fn decode_ignores_inter_element_whitespace(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let device = common::random_device(&mut r);
        let user = common::random_user(&mut r, None);
        let squeezed: String = serialize_uda_ontology(&device, &user)
            .lines()
            .map(str::trim)
            .collect::<Vec<_>>()
            .join("\n\t  ");
        prop_assert_eq!(parse_uda_ontology(&squeezed), Ok((device, user)));
    }
}

#[test]
fn reference_message_decodes() {
    let msg = decode_acml(common::REFERENCE_MESSAGE).unwrap();
    assert_eq!(msg.message_type(), "request");
    assert_eq!(msg.sender(), "UDA");
    assert_eq!(msg.receiver(), "SMA");
    assert_eq!(msg.content(), Some("Request of available skills"));
    assert_eq!(msg.text_of(ParameterKind::ReplyWith), Some("List of skills"));
    let ontology = msg.parameter(ParameterKind::Ontology).unwrap();
    assert_eq!(ontology.text, "Ontology of UDA");
    assert_eq!(ontology.link.as_deref(), Some("http://example.org/user/UDAontology.xml"));
    assert_eq!(encode_acml(&msg), common::REFERENCE_MESSAGE);
}

#[test]
fn message_without_parameters_is_rejected() {
    assert!(matches!(AcmlMessage::new("request", vec![]), Err(AcmlError::MissingParticipant(_))));
    let xml = "<message><messagetype>request</messagetype></message>";
    assert!(matches!(decode_acml(xml), Err(CodecError::Acml(AcmlError::MissingParticipant(_)))));
}

#[test]
fn parameter_order_is_preserved() {
    let params = vec![
        MessageParameter::new(ParameterKind::Content, "c"),
        MessageParameter::new(ParameterKind::Receiver, "r"),
        MessageParameter::new(ParameterKind::Sender, "s"),
    ];
    let msg = AcmlMessage::new("inform", params.clone()).unwrap();
    assert_eq!(decode_acml(&encode_acml(&msg)).unwrap().parameters(), &params[..]);
}

#[test]
fn minimal_uda_document() {
    let xml = r#"<UDAOntology><DP DId="d1" BMax="12.5" VE="1" AE="1" TE="1"/>
        <UP UId="u1" MaxTime="3600"><AcqSkillSet/><KnownSubjSet/></UP></UDAOntology>"#;
    let (dp, up) = parse_uda_ontology(xml).unwrap();
    assert_eq!(dp.max_bandwidth, 12.5);
    assert_eq!(up.max_time, 3600.0);
    assert!(up.known_subjects.is_empty());
    let out = serialize_uda_ontology(&dp, &up);
    assert!(out.contains("<UDAOntology>"));
    assert!(out.contains("<KnownSubjSet/>"));
}

#[test]
fn catalog_object_bitrate_and_dangling_reference() {
    let xml = r#"<Catalog><SkillSet/>
        <SubjSet><Subj SubjId="s" SubjName="S"><SubjPrereqSet/><SubjLObjSet><LObjRef LObjId="o"/></SubjLObjSet></Subj></SubjSet>
        <LObjSet><LObj LObjId="o" LObjName="O" LObjSubject="s" LObjLocation="x" LObjVC="0" LObjAC="0" LObjTC="1" LObjSize="40000" LObjDuration="600"/></LObjSet>
        </Catalog>"#;
    let (catalog, report) = parse_catalog(xml).unwrap();
    assert!(report.is_valid());
    let bitrate = catalog.objects()[0].bitrate_f64();
    assert!((bitrate - 66.666).abs() < 0.01);

    let dangling = xml.replace(r#"LObjSubject="s""#, r#"LObjSubject="nowhere""#);
    let (_, report) = parse_catalog(&dangling).unwrap();
    assert!(!report.is_valid());
}

#[test]
fn malformed_xml_is_reported() {
    assert!(matches!(parse_uda_ontology("<UDAOntology><DP"), Err(CodecError::MalformedXml(_))));
    assert!(matches!(decode_acml("<message>"), Err(CodecError::MalformedXml(_))));
}
